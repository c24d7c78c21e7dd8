#include "pcv/operators.hpp"

#include <fstream>
#include <sstream>

#include "pcv/io.hpp"

namespace pcv {

extern const char* const kEmbeddedOperatorJson;

namespace {

const LocalizedClass& q_() {
    static const LocalizedClass v = LocalizedClass::q();
    return v;
}

// q^3 - q
const LocalizedClass& pgl() {
    static const LocalizedClass v = q_() * q_() * q_() - q_();
    return v;
}

int idx(Core k) { return core_index(k); }

}  // namespace

CoreMatrix eta_core_matrix() {
    const LocalizedClass q = q_(), q2 = q * q;
    CoreMatrix m = zero_core_matrix();
    m(idx(Core::T2), idx(Core::T2)) = 1;
    m(idx(Core::Tm2), idx(Core::Tm2)) = 1;
    m(idx(Core::Tp), idx(Core::Tp)) = q2 - 1;
    m(idx(Core::Tm), idx(Core::Tm)) = q2 - 1;
    m(idx(Core::TTheta), idx(Core::TTheta)) = q2;
    m(idx(Core::S2Sm2), idx(Core::TTheta)) = q;
    m(idx(Core::TTheta), idx(Core::S2Sm2)) = q;
    m(idx(Core::S2Sm2), idx(Core::S2Sm2)) = q2;
    m(idx(Core::S2), idx(Core::S2)) = q2;
    m(idx(Core::Sm2), idx(Core::S2)) = q;
    m(idx(Core::S2), idx(Core::Sm2)) = q;
    m(idx(Core::Sm2), idx(Core::Sm2)) = q2;
    return m;
}

CoreMatrix eta_inverse_core_matrix() {
    // Blocks [[q^2, q], [q, q^2]] invert to [[q^2, -q], [-q, q^2]] / (q^4 - q^2).
    const LocalizedClass q = q_();
    const LocalizedClass inv_block = LocalizedClass::unit(-2, -1, -1);
    const LocalizedClass diag = q * q * inv_block, off = -(q * inv_block);
    CoreMatrix m = zero_core_matrix();
    m(idx(Core::T2), idx(Core::T2)) = 1;
    m(idx(Core::Tm2), idx(Core::Tm2)) = 1;
    m(idx(Core::Tp), idx(Core::Tp)) = LocalizedClass::unit(0, -1, -1);
    m(idx(Core::Tm), idx(Core::Tm)) = LocalizedClass::unit(0, -1, -1);
    for (auto [a, b] : {std::pair{Core::TTheta, Core::S2Sm2}, std::pair{Core::S2, Core::Sm2}}) {
        m(idx(a), idx(a)) = diag;
        m(idx(b), idx(b)) = diag;
        m(idx(a), idx(b)) = off;
        m(idx(b), idx(a)) = off;
    }
    return m;
}

namespace {

ModuleElement scale_sky_and_core(const ModuleElement& v, const CoreMatrix& m, const LocalizedClass& sky_scale) {
    ModuleElement out = ModuleElement::from_core(m * v.core());
    for (const auto& [t, c] : v.sky()) out.add(t, sky_scale * c);
    return out;
}

}  // namespace

ModuleElement eta_apply(const ModuleElement& v) {
    static const CoreMatrix m = eta_core_matrix();
    return scale_sky_and_core(v, m, q_() * q_() + q_());
}

ModuleElement eta_inverse_apply(const ModuleElement& v) {
    static const CoreMatrix m = eta_inverse_core_matrix();
    return scale_sky_and_core(v, m, LocalizedClass::unit(-1, -1, 0));
}

// ---- operator data

OperatorData OperatorData::embedded() { return from_json_text(kEmbeddedOperatorJson); }

OperatorData OperatorData::from_json_text(const std::string& text) { return operator_data_from_json(text); }

OperatorData OperatorData::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MissingOperatorData, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void OperatorData::install(FittedOperator op) {
    TubeKind k = op.kind;
    ops_[k] = std::move(op);
}

const FittedOperator& OperatorData::require(TubeKind k) const {
    auto it = ops_.find(k);
    if (it == ops_.end())
        throw Error(ErrorCode::MissingOperatorData, std::string("no fitted matrix for ") + tube_kind_name(k));
    return it->second;
}

// ---- tubes

ModuleElement TubeOperator::apply(const ModuleElement& v) const {
    if (t0 && !v.sky().empty()) require_same_backend(t0->representative(), v.sky().begin()->first.representative());
    ModuleElement out = ModuleElement::from_core(core_matrix * v.core());
    for (int j = 0; j < kCoreCount; ++j) {
        const LocalizedClass& c = v.core()(j);
        if (c.is_zero()) continue;
        for (const auto& [t, coeff] : core_to_sky[j]) out.add(t, coeff * c);
    }
    for (const auto& [t, c] : v.sky()) out.add_scaled(c, sky_rule(t));
    return out;
}

ModuleElement sky_delta(const EigenClass& mu) {
    const LocalizedClass q = q_();
    switch (classify_unit(mu)) {
        case UnitKind::IsOne: {
            ModuleElement v = ModuleElement::generator(Core::T2);
            v.add(Core::Tp, q - 1);
            return v;
        }
        case UnitKind::IsMinusOne: {
            ModuleElement v = ModuleElement::generator(Core::Tm2);
            v.add(Core::Tm, q - 1);
            return v;
        }
        case UnitKind::Generic: break;
    }
    return ModuleElement::generator(orbit_of(mu), q);
}

TubeOperator semisimple_tube(const TraceOrbit& t0, bool reduced) {
    const LocalizedClass q = q_(), q2 = q * q;
    const TraceOrbit mt0 = orbit_neg(t0);
    const LocalizedClass pref = reduced ? pgl() : (q2 + q) * pgl();

    TubeOperator op;
    op.kind = TubeKind::Semisimple;
    op.t0 = t0;
    op.reduced = reduced;
    auto set = [&](Core col, Core row, const LocalizedClass& c) { op.core_matrix(idx(row), idx(col)) = pref * c; };
    auto sky = [&](Core col, const TraceOrbit& t, const LocalizedClass& c) {
        op.core_to_sky[idx(col)].push_back({t, pref * c});
    };

    if (reduced) {
        sky(Core::T2, t0, q2 + q);
        sky(Core::Tm2, mt0, q2 + q);
        for (Core row : {Core::Tp, Core::Tm, Core::TTheta}) {
            set(Core::Tp, row, q);
            set(Core::Tm, row, q);
        }
        sky(Core::Tp, t0, q);
        sky(Core::Tm, mt0, q);

        set(Core::TTheta, Core::T2, 1);
        set(Core::TTheta, Core::Tm2, 1);
        set(Core::TTheta, Core::Tp, q2 - q);
        set(Core::TTheta, Core::Tm, q2 - q);
        set(Core::TTheta, Core::TTheta, q2 - q + 1);
        set(Core::TTheta, Core::S2Sm2, q);
        sky(Core::TTheta, t0, -q);
        sky(Core::TTheta, mt0, -q);

        for (Core col : {Core::S2, Core::Sm2}) {
            set(col, Core::T2, 1);
            set(col, Core::Tm2, 1);
            set(col, Core::TTheta, 1 - q);
            set(col, Core::S2, q);
            set(col, Core::Sm2, q);
            sky(col, t0, -q);
            sky(col, mt0, -q);
        }

        set(Core::S2Sm2, Core::T2, 1);
        set(Core::S2Sm2, Core::Tm2, 1);
        set(Core::S2Sm2, Core::Tp, 1 - q);
        set(Core::S2Sm2, Core::Tm, 1 - q);
        set(Core::S2Sm2, Core::TTheta, 2 - q);
        set(Core::S2Sm2, Core::S2Sm2, q);
        sky(Core::S2Sm2, t0, -q);
        sky(Core::S2Sm2, mt0, -q);
    } else {
        sky(Core::T2, t0, 1);
        sky(Core::Tm2, mt0, 1);
        for (Core row : {Core::Tp, Core::Tm, Core::TTheta}) {
            set(Core::Tp, row, q - 1);
            set(Core::Tm, row, q - 1);
        }
        sky(Core::Tp, t0, q - 1);
        sky(Core::Tm, mt0, q - 1);

        set(Core::TTheta, Core::T2, 1);
        set(Core::TTheta, Core::Tm2, 1);
        set(Core::TTheta, Core::Tp, (q - 1) * (q - 1));
        set(Core::TTheta, Core::Tm, (q - 1) * (q - 1));
        set(Core::TTheta, Core::TTheta, q2 - 2 * q + 2);
        set(Core::TTheta, Core::S2Sm2, q);
        sky(Core::TTheta, t0, -q);
        sky(Core::TTheta, mt0, -q);

        for (Core col : {Core::S2, Core::Sm2}) {
            set(col, Core::T2, 1);
            set(col, Core::Tm2, 1);
            set(col, Core::TTheta, 1 - q);
            set(col, Core::S2, q);
            set(col, Core::Sm2, q);
            sky(col, t0, -q);
            sky(col, mt0, -q);
        }

        set(Core::S2Sm2, Core::T2, 1);
        set(Core::S2Sm2, Core::Tm2, 1);
        set(Core::S2Sm2, Core::TTheta, 1);
        set(Core::S2Sm2, Core::S2Sm2, q);
        sky(Core::S2Sm2, t0, -q);
        sky(Core::S2Sm2, mt0, -q);
    }

    const LocalizedClass sky_pref = reduced ? pgl() : (q2 + q) * pgl();
    const EigenClass l0 = t0.representative();
    op.sky_rule = [l0, sky_pref](const TraceOrbit& t) {
        const LocalizedClass qq = q_();
        const EigenClass& l = t.representative();
        ModuleElement v;
        v.add(Core::Tp, qq - 1);
        v.add(Core::Tm, qq - 1);
        v.add(Core::TTheta, qq - 1);
        v += sky_delta(eigen_mul(l0, l));
        v += sky_delta(eigen_mul(l0, eigen_inv(l)));
        return sky_pref * v;
    };
    return op;
}

namespace {

CoreMatrix fitted_core(const FittedOperator& f) {
    CoreMatrix m = zero_core_matrix();
    for (int i = 0; i < kCoreCount; ++i)
        for (int j = 0; j < kCoreCount; ++j) m(i, j) = pgl() * LocalizedClass(f.entries[i][j]);
    return m;
}

TubeOperator fitted_tube(TubeKind kind, const FittedOperator& f, bool reduced) {
    TubeOperator op;
    op.kind = kind;
    op.reduced = reduced;
    op.core_matrix = fitted_core(f);
    if (reduced) op.core_matrix = CoreMatrix(op.core_matrix * eta_inverse_core_matrix());
    return op;
}

}  // namespace

TubeOperator jordan_tube(int sign, const OperatorData& data, bool reduced) {
    TubeKind kind = sign > 0 ? TubeKind::JordanPlus : TubeKind::JordanMinus;
    TubeOperator op = fitted_tube(kind, data.require(kind), reduced);
    const LocalizedClass pref = pgl() * pgl() * (reduced ? LocalizedClass::unit(-1, -1, 0) : LocalizedClass(1));
    op.sky_rule = [pref, sign](const TraceOrbit& t) {
        ModuleElement v;
        v.add(Core::Tp, 1);
        v.add(Core::Tm, 1);
        v.add(Core::TTheta, 1);
        v.add(sign > 0 ? t : orbit_neg(t), 1);
        return pref * v;
    };
    return op;
}

TubeOperator handle_tube(const OperatorData& data, bool reduced) {
    TubeOperator op = fitted_tube(TubeKind::Handle, data.require(TubeKind::Handle), reduced);
    const LocalizedClass pref = pgl() * pgl() * (reduced ? LocalizedClass::unit(-1, -1, 0) : LocalizedClass(1));
    op.sky_rule = [pref](const TraceOrbit& t) {
        const LocalizedClass q = q_(), q2 = q * q, q3 = q2 * q;
        ModuleElement v;
        v.add(Core::T2, q2 + 4 * q + 1);
        v.add(Core::Tm2, q2 + 4 * q + 1);
        v.add(Core::Tp, (q2 + 2 * q + 3) * (q - 1) * q);
        v.add(Core::Tm, (q2 + 2 * q + 3) * (q - 1) * q);
        v.add(Core::TTheta, q3 * q + q3 - q2 + q + 1);
        v.add(Core::S2, 3 * q2);
        v.add(Core::Sm2, 3 * q2);
        v.add(Core::S2Sm2, q3 + q2 + q);
        v.add(t, q3 - q2);
        return pref * v;
    };
    return op;
}

ModuleElement semisimple_tube_apply(const TraceOrbit& t0, const ModuleElement& v, bool reduced) {
    return semisimple_tube(t0, reduced).apply(v);
}

ModuleElement jordan_tube_apply(int sign, const ModuleElement& v, const OperatorData& data, bool reduced) {
    return jordan_tube(sign, data, reduced).apply(v);
}

ModuleElement handle_tube_apply(const ModuleElement& v, const OperatorData& data, bool reduced) {
    return handle_tube(data, reduced).apply(v);
}

// ---- surfaces

void validate_spec(const SurfaceSpec& spec) {
    if (spec.genus < 0 || spec.r_plus < 0 || spec.r_minus < 0 || spec.minus_id < 0)
        throw Error(ErrorCode::InvalidSpec, "negative genus or puncture count");
    for (std::size_t i = 0; i < spec.semisimple.size(); ++i) {
        if (i > 0) require_same_backend(spec.semisimple[0], spec.semisimple[i]);
        if (classify_unit(spec.semisimple[i]) != UnitKind::Generic)
            throw Error(ErrorCode::InvalidSpec, "semisimple eigenvalue " + to_string(spec.semisimple[i]) + " is ±1");
    }
}

ReducedSurface reduce_holonomies(const SurfaceSpec& spec) {
    validate_spec(spec);
    ReducedSurface red;
    red.genus = spec.genus;
    red.r = spec.r_plus + spec.r_minus;
    red.sigma = (spec.r_minus + spec.minus_id) % 2 == 0 ? 1 : -1;
    red.semisimple = spec.semisimple;
    if (red.sigma < 0) {
        if (red.semisimple.empty())
            throw Error(ErrorCode::OutOfScopeTwisted, "odd number of [J-] and -Id punctures without semisimple ones");
        red.semisimple[0] = eigen_neg(red.semisimple[0]);
    }
    return red;
}

ModuleElement iterated_semisimple(const std::vector<EigenClass>& eigs) {
    ModuleElement v = ModuleElement::generator(Core::T2);
    for (const auto& l : eigs) v = semisimple_tube(orbit_of(l)).apply(v);
    return v;
}

LocalizedClass assemble_representation_class(const SurfaceSpec& spec, const OperatorData& data) {
    ReducedSurface red = reduce_holonomies(spec);
    ModuleElement v = iterated_semisimple(red.semisimple);
    if (red.r > 0) {
        TubeOperator j = jordan_tube(+1, data);
        for (int i = 0; i < red.r; ++i) v = j.apply(v);
    }
    if (red.genus > 0) {
        TubeOperator h = handle_tube(data);
        for (int i = 0; i < red.genus; ++i) v = h.apply(v);
    }
    unsigned n = static_cast<unsigned>(red.semisimple.size() + red.r + red.genus);
    LocalizedClass out = divide_exact(v.core()(idx(Core::T2)), pgl().pow(n));
    if (!out.is_polynomial()) throw Error(ErrorCode::NotPolynomial, "assembled class " + to_string(out));
    return out;
}

}  // namespace pcv
