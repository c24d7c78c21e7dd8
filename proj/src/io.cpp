#include "pcv/io.hpp"

namespace pcv {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

mpz_class parse_integer(const Json& j) {
    mpz_class z;
    if (j.is_string()) {
        if (z.set_str(j.get<std::string>(), 10) != 0) parse_fail("bad integer " + j.dump());
    } else if (j.is_number_integer()) {
        z = j.get<long>();
    } else {
        parse_fail("expected integer, got " + j.dump());
    }
    return z;
}

}  // namespace

Json class_to_json(const LocalizedClass& a) {
    Json num = Json::array();
    const auto& cs = a.numerator().coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i] != 0) num.push_back(Json::array({static_cast<int>(i), cs[i].get_str()}));
    const auto& d = a.denominator();
    return Json{{"num", num}, {"den", Json::array({d[0], d[1], d[2]})}};
}

LocalizedClass class_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("num")) parse_fail("class needs \"num\"");
        std::vector<mpz_class> coeffs;
        for (const auto& term : j.at("num")) {
            if (!term.is_array() || term.size() != 2) parse_fail("bad term " + term.dump());
            int e = term[0].get<int>();
            if (e < 0) parse_fail("negative exponent");
            if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(e + 1, mpz_class(0));
            coeffs[e] += parse_integer(term[1]);
        }
        LocalizedClass::Exponents den{0, 0, 0};
        if (j.contains("den")) {
            const auto& d = j.at("den");
            if (!d.is_array() || d.size() != 3) parse_fail("\"den\" must have three entries");
            for (int i = 0; i < 3; ++i) {
                den[i] = d[i].get<int>();
                if (den[i] < 0) parse_fail("negative denominator exponent");
            }
        }
        return LocalizedClass::canonicalize(IntPoly(std::move(coeffs)), den);
    } catch (const nlohmann::json::exception& e) {
        parse_fail(e.what());
    }
}

Json module_to_json(const ModuleElement& v) {
    Json core = Json::object();
    for (int i = 0; i < kCoreCount; ++i)
        if (!v.core()(i).is_zero()) core[core_name(core_at(i))] = class_to_json(v.core()(i));
    Json sky = Json::array();
    for (const auto& [t, c] : v.sky()) sky.push_back(Json{{"orbit", to_string(t)}, {"coeff", class_to_json(c)}});
    return Json{{"core", core}, {"sky", sky}};
}

ModuleElement module_from_json(const Json& j, int symbolic_count) {
    try {
        ModuleElement v;
        if (j.contains("core"))
            for (const auto& [name, c] : j.at("core").items()) {
                auto k = parse_core_name(name);
                if (!k) parse_fail("unknown generator " + name);
                v.add(*k, class_from_json(c));
            }
        if (j.contains("sky"))
            for (const auto& entry : j.at("sky"))
                v.add(orbit_of(parse_eigen(entry.at("orbit").get<std::string>(), symbolic_count)),
                      class_from_json(entry.at("coeff")));
        return v;
    } catch (const nlohmann::json::exception& e) {
        parse_fail(e.what());
    }
}

Json fitted_to_json(const FittedOperator& op) {
    Json entries = Json::array();
    for (const auto& row : op.entries) {
        Json r = Json::array();
        for (const auto& e : row) {
            Json cs = Json::array();
            for (const auto& c : e.coeffs()) cs.push_back(c.get_str());
            r.push_back(cs);
        }
        entries.push_back(r);
    }
    return Json{{"kind", tube_kind_name(op.kind)}, {"degree_bound", op.degree_bound}, {"primes", op.primes},
                {"held_out", op.held_out},         {"entries", entries},             {"prefactor", op.prefactor},
                {"checksum", op.checksum}};
}

FittedOperator fitted_from_json(const Json& j) {
    try {
        FittedOperator op;
        auto kind = parse_tube_kind(j.at("kind").get<std::string>());
        if (!kind || *kind == TubeKind::Semisimple) parse_fail("bad operator kind " + j.at("kind").dump());
        op.kind = *kind;
        op.degree_bound = j.at("degree_bound").get<int>();
        op.primes = j.at("primes").get<std::vector<int>>();
        if (j.contains("held_out")) op.held_out = j.at("held_out").get<std::vector<int>>();
        op.prefactor = j.at("prefactor").get<std::string>();
        const auto& rows = j.at("entries");
        if (!rows.is_array() || rows.size() != 8) parse_fail("entries must be 8x8");
        for (int r = 0; r < 8; ++r) {
            if (!rows[r].is_array() || rows[r].size() != 8) parse_fail("entries must be 8x8");
            for (int c = 0; c < 8; ++c) {
                std::vector<mpz_class> cs;
                for (const auto& x : rows[r][c]) cs.push_back(parse_integer(x));
                op.entries[r][c] = IntPoly(std::move(cs));
            }
        }
        op.checksum = j.at("checksum").get<std::string>();
        if (op.checksum != compute_checksum(op))
            parse_fail(std::string("checksum mismatch for ") + tube_kind_name(op.kind));
        return op;
    } catch (const nlohmann::json::exception& e) {
        parse_fail(e.what());
    }
}

Json operator_data_to_json(const OperatorData& data) {
    Json ops = Json::array();
    for (const auto& [k, op] : data.all()) ops.push_back(fitted_to_json(op));
    return Json{{"operators", ops}};
}

std::string render_operator_data(const OperatorData& data) { return operator_data_to_json(data).dump(1) + "\n"; }

OperatorData operator_data_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        parse_fail(e.what());
    }
    OperatorData data;
    if (!j.is_object() || !j.contains("operators") || !j.at("operators").is_array())
        parse_fail("operator data needs an \"operators\" array");
    for (const auto& op : j.at("operators")) data.install(fitted_from_json(op));
    return data;
}

}  // namespace pcv
