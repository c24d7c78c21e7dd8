#include "pcv/wmodule.hpp"

namespace pcv {

namespace {
const char* const kCoreNames[kCoreCount] = {"T2", "Tm2", "Tp", "Tm", "TTheta", "S2", "Sm2", "S2Sm2"};
}

const char* core_name(Core k) { return kCoreNames[core_index(k)]; }

std::optional<Core> parse_core_name(const std::string& name) {
    for (int i = 0; i < kCoreCount; ++i)
        if (name == kCoreNames[i]) return core_at(i);
    return std::nullopt;
}

CoreVector zero_core_vector() {
    CoreVector v;
    for (int i = 0; i < kCoreCount; ++i) v(i) = LocalizedClass();
    return v;
}

CoreMatrix zero_core_matrix() {
    CoreMatrix m;
    for (int i = 0; i < kCoreCount; ++i)
        for (int j = 0; j < kCoreCount; ++j) m(i, j) = LocalizedClass();
    return m;
}

ModuleElement ModuleElement::generator(Core k, const LocalizedClass& c) {
    ModuleElement v;
    v.add(k, c);
    return v;
}

ModuleElement ModuleElement::generator(const TraceOrbit& t, const LocalizedClass& c) {
    ModuleElement v;
    v.add(t, c);
    return v;
}

ModuleElement ModuleElement::from_core(const CoreVector& core) {
    ModuleElement v;
    v.core_ = core;
    return v;
}

std::optional<Backend> ModuleElement::sky_backend() const {
    if (sky_.empty()) return std::nullopt;
    return sky_.begin()->first.backend();
}

bool ModuleElement::is_zero() const {
    if (!sky_.empty()) return false;
    for (int i = 0; i < kCoreCount; ++i)
        if (!core_(i).is_zero()) return false;
    return true;
}

void ModuleElement::add(Core k, const LocalizedClass& c) { core_(core_index(k)) += c; }

void ModuleElement::add(const TraceOrbit& t, const LocalizedClass& c) {
    if (auto b = sky_backend(); b && *b != t.backend())
        require_same_backend(sky_.begin()->first.representative(), t.representative());
    if (c.is_zero()) return;
    auto it = sky_.find(t);
    if (it == sky_.end()) {
        sky_.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) sky_.erase(it);
}

void ModuleElement::add_scaled(const LocalizedClass& c, const ModuleElement& src) {
    if (auto a = sky_backend(), b = src.sky_backend(); a && b && *a != *b)
        require_same_backend(sky_.begin()->first.representative(), src.sky_.begin()->first.representative());
    if (c.is_zero()) return;
    for (int i = 0; i < kCoreCount; ++i)
        if (!src.core_(i).is_zero()) core_(i) += c * src.core_(i);
    for (const auto& [t, coeff] : src.sky_) add(t, c * coeff);
}

ModuleElement operator*(const LocalizedClass& c, const ModuleElement& v) {
    ModuleElement r;
    r.add_scaled(c, v);
    return r;
}

bool operator==(const ModuleElement& a, const ModuleElement& b) {
    for (int i = 0; i < kCoreCount; ++i)
        if (a.core_(i) != b.core_(i)) return false;
    return a.sky_ == b.sky_;
}

ModuleElement elem_add_scaled(ModuleElement target, const LocalizedClass& c, const ModuleElement& src) {
    target.add_scaled(c, src);
    return target;
}

LocalizedClass coefficient_of(const ModuleElement& v, const GeneratorKey& k) {
    if (const Core* c = std::get_if<Core>(&k)) return v.core()(core_index(*c));
    const auto& t = std::get<TraceOrbit>(k);
    auto it = v.sky().find(t);
    return it == v.sky().end() ? LocalizedClass() : it->second;
}

std::string to_string(const ModuleElement& v) {
    std::string out;
    auto term = [&](const LocalizedClass& c, const std::string& name) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ")*" + name;
    };
    for (int i = 0; i < kCoreCount; ++i) term(v.core()(i), kCoreNames[i]);
    for (const auto& [t, c] : v.sky()) term(c, "T[" + to_string(t) + "]");
    return out.empty() ? "0" : out;
}

}  // namespace pcv
