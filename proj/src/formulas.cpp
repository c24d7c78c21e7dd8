#include "pcv/formulas.hpp"

namespace pcv {

namespace {

LocalizedClass q_() { return LocalizedClass::q(); }
LocalizedClass pgl() { return q_().pow(3) - q_(); }
LocalizedClass qp(int e) { return LocalizedClass::unit(e, 0, 0); }
LocalizedClass qp1(unsigned e) { return (q_() + 1).pow(e); }
LocalizedClass qm1(unsigned e) { return (q_() - 1).pow(e); }
LocalizedClass two(unsigned e) { return LocalizedClass(mpz_class(1) << e); }

void check_eigs(const std::vector<EigenClass>& eigs) {
    if (eigs.size() > static_cast<std::size_t>(kMaxPunctures))
        throw Error(ErrorCode::TooManyPunctures, std::to_string(eigs.size()) + " semisimple punctures");
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (i > 0) require_same_backend(eigs[0], eigs[i]);
        if (classify_unit(eigs[i]) != UnitKind::Generic)
            throw Error(ErrorCode::InvalidSpec, "eigenvalue " + to_string(eigs[i]) + " is ±1");
    }
}

// Calls f(product) for every sign pattern with ε1 = +1; the other half are inverses.
template <typename F>
void for_half_products(const std::vector<EigenClass>& eigs, F&& f) {
    std::vector<EigenClass> inverses;
    for (const auto& l : eigs) inverses.push_back(eigen_inv(l));
    const std::vector<EigenClass>& inv = inverses;
    const std::size_t s = eigs.size();
    std::vector<EigenClass> prefix{eigs[0]};
    prefix.reserve(s);
    // depth-first over ε2..εs, reusing prefix products
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == s) {
            f(prefix.back());
            return;
        }
        for (const EigenClass* factor : {&eigs[i], &inv[i]}) {
            prefix.push_back(eigen_mul(prefix.back(), *factor));
            self(self, i + 1);
            prefix.pop_back();
        }
    };
    rec(rec, 1);
}

LocalizedClass halve(const LocalizedClass& twice) {
    std::vector<mpz_class> cs;
    for (const auto& c : twice.numerator().coeffs()) {
        if (!mpz_divisible_2exp_p(c.get_mpz_t(), 1))
            throw Error(ErrorCode::NotPolynomial, "class with half-integer coefficient: (" + to_string(twice) + ")/2");
        cs.push_back(c / 2);
    }
    return LocalizedClass::canonicalize(IntPoly(std::move(cs)), twice.denominator());
}

}  // namespace

AlphaCounts alpha_counts(const std::vector<EigenClass>& eigs) {
    check_eigs(eigs);
    AlphaCounts a;
    if (eigs.empty()) return a;
    for_half_products(eigs, [&](const EigenClass& p) {
        switch (classify_unit(p)) {
            case UnitKind::IsOne: ++a.alpha_plus; break;
            case UnitKind::IsMinusOne: ++a.alpha_minus; break;
            case UnitKind::Generic: break;
        }
    });
    return a;
}

std::array<LocalizedClass, 4> generic_coefficients(int s) {
    if (s < 1) throw Error(ErrorCode::InvalidSpec, "s must be positive");
    const LocalizedClass q = q_();
    const unsigned us = static_cast<unsigned>(s);
    const LocalizedClass qs = q.pow(us), p1s = qp1(us), p1sq = qp1(2), half = two(us - 1);
    return {qs * p1s + q * q * p1s - half * qs * p1sq,
            qs * qp1(us + 1) * (q - 1) - half * qs * p1sq * (q - 1),
            q.pow(us + 2) * p1s + q * q * p1s - half * q.pow(us + 1) * p1sq,
            q.pow(us + 1) * p1s + q.pow(3) * p1s - half * q.pow(us + 1) * p1sq};
}

ModuleElement interaction_term(const std::vector<EigenClass>& eigs) {
    AlphaCounts a = alpha_counts(eigs);
    ModuleElement v;
    if (eigs.empty()) return v;
    const LocalizedClass q = q_();
    const unsigned s = static_cast<unsigned>(eigs.size());
    const LocalizedClass pref = q.pow(s - 1) * pgl().pow(s) * (q + 1);
    v.add(Core::T2, pref * LocalizedClass(a.alpha_plus));
    v.add(Core::Tp, pref * LocalizedClass(a.alpha_plus) * (q - 1));
    v.add(Core::Tm2, pref * LocalizedClass(a.alpha_minus));
    v.add(Core::Tm, pref * LocalizedClass(a.alpha_minus) * (q - 1));
    return v;
}

ModuleElement iterated_tube_closed_form(const std::vector<EigenClass>& eigs) {
    check_eigs(eigs);
    if (eigs.empty()) return ModuleElement::generator(Core::T2);
    const LocalizedClass q = q_();
    const unsigned s = static_cast<unsigned>(eigs.size());
    auto [a, b, c, d] = generic_coefficients(static_cast<int>(s));
    const LocalizedClass lead = pgl().pow(s - 1);
    ModuleElement v;
    v.add(Core::T2, lead * a);
    v.add(Core::Tm2, lead * a);
    v.add(Core::Tp, lead * b);
    v.add(Core::Tm, lead * b);
    v.add(Core::TTheta, lead * c);
    v.add(Core::S2Sm2, lead * d);
    // ε and -ε land in one orbit, which absorbs the 1/2
    const LocalizedClass sky = pgl().pow(s) * (q + 1) * q.pow(s);
    for_half_products(eigs, [&](const EigenClass& p) {
        if (classify_unit(p) == UnitKind::Generic) v.add(orbit_of(p), sky);
    });
    v += interaction_term(eigs);
    return v;
}

LocalizedClass rep_interaction(int g, int r, const AlphaCounts& a, int s) {
    const LocalizedClass q = q_();
    const LocalizedClass ap(a.alpha_plus), sum(a.alpha_plus + a.alpha_minus);
    const unsigned ug = static_cast<unsigned>(g), ur = static_cast<unsigned>(r);
    const int e = 2 * g + s - 1;
    if (r > 0) {
        // twice the displayed bracket, so the 1/2 stays integral until the end
        LocalizedClass bracket2 = 2 * (two(2 * ug) + two(2 * ug) * q - 2 * q - 2 + qp1(2 * ug + ur) +
                                       (q + 1) * (1 - two(2 * ug - 1))) -
                                  (q + 1) * qp1(2 * ug + ur - 1);
        LocalizedClass twice = qp(e) * qm1(2 * ug + ur - 1) * sum * bracket2 +
                               2 * qp(e) * qm1(2 * ug + ur) * (q + 1) * ap;
        return halve(twice);
    }
    LocalizedClass bracket = q * qp1(2 * ug - 1) + qp(2 * g) * qp1(2 * ug - 1) - qp(2 * g) * qp1(2 * ug - 1) -
                             q * qp1(2 * ug - 1);
    return qp(s - 1) * qm1(2 * ug - 1) * (q + 1) * sum * bracket + qp(e) * qm1(2 * ug) * (q + 1) * ap;
}

LocalizedClass rep_class_closed(int g, int r, const std::vector<EigenClass>& eigs) {
    if (g < 1 || r < 0 || eigs.empty()) throw Error(ErrorCode::InvalidSpec, "closed Rep form needs g >= 1, s >= 1");
    AlphaCounts a = alpha_counts(eigs);
    const LocalizedClass q = q_();
    const int s = static_cast<int>(eigs.size());
    const unsigned ug = static_cast<unsigned>(g), ur = static_cast<unsigned>(r), us = static_cast<unsigned>(s);
    const int e = 2 * g + s - 1;
    LocalizedClass main;
    if (r > 0) {
        main = qp(e) * qm1(2 * ug + ur - 1) * (q + 1) * (two(2 * ug + us - 1) - two(us) + qp1(2 * ug + ur + us - 2));
    } else {
        main = qp(e) * qm1(2 * ug - 1) * (q + 1) *
               (two(2 * ug + us - 1) - two(us) + qp1(2 * ug + us - 2) + qp(2 - 2 * g - s) * qp1(2 * ug + us - 2));
    }
    LocalizedClass out = main + rep_interaction(g, r, a, s);
    if (!out.is_polynomial()) throw Error(ErrorCode::NotPolynomial, "closed Rep class " + to_string(out));
    return out;
}

ReducibleClasses reducible_and_diag_classes(int g, const std::vector<EigenClass>& eigs) {
    if (g < 1 || eigs.empty()) throw Error(ErrorCode::InvalidSpec, "reducible locus needs g >= 1, s >= 1");
    AlphaCounts a = alpha_counts(eigs);
    const LocalizedClass q = q_(), ap(a.alpha_plus);
    const unsigned ug = static_cast<unsigned>(g);
    const int s = static_cast<int>(eigs.size());
    return {ap * qm1(2 * ug) * (q + 1) * (2 * qp(2 * g + s - 1) - q), ap * qm1(2 * ug)};
}

LocalizedClass char_display(const SurfaceSpec& spec) {
    ReducedSurface red = reduce_holonomies(spec);
    if (red.semisimple.empty()) throw Error(ErrorCode::OutOfScopeTwisted, "closed Char form needs s >= 1");
    if (red.genus < 1) throw Error(ErrorCode::InvalidSpec, "closed Char form needs g >= 1");
    const LocalizedClass q = q_();
    const int g = red.genus, r = red.r, s = static_cast<int>(red.semisimple.size());
    const unsigned ug = static_cast<unsigned>(g), ur = static_cast<unsigned>(r), us = static_cast<unsigned>(s);
    AlphaCounts a = alpha_counts(red.semisimple);
    const LocalizedClass ibar = rep_interaction(g, r, a, s);
    if (r > 0)
        return qp(2 * g + s - 2) * qm1(2 * ug + ur - 2) * (two(2 * ug + us - 1) - two(us) + qp1(2 * ug + ur + us - 2)) +
               divide_exact(ibar, pgl());
    return qp(2 * g + s - 2) * qm1(2 * ug - 2) * (two(2 * ug + us - 1) - two(us) + qp1(2 * ug + us - 2)) +
           (q * q - 1).pow(2 * ug - 2) * qp1(us) +
           2 * LocalizedClass(a.alpha_plus) * qm1(2 * ug - 1) * (2 * q - 2 * qp(2 * g + s - 2) - 1) +
           divide_exact(ibar, pgl());
}

LocalizedClass char_class_assembly(const SurfaceSpec& spec, const OperatorData& data) {
    ReducedSurface red = reduce_holonomies(spec);
    if (red.semisimple.empty()) throw Error(ErrorCode::OutOfScopeTwisted, "Char class needs s >= 1");
    if (red.genus < 1) throw Error(ErrorCode::InvalidSpec, "Char class needs g >= 1");
    const LocalizedClass rep = assemble_representation_class(spec, data);
    if (red.r > 0) return divide_exact(rep, pgl());
    ReducibleClasses rd = reducible_and_diag_classes(red.genus, red.semisimple);
    return rd.diag_quotient + divide_exact(rep - rd.reducible, pgl());
}

CharRoutes char_class_routes(const SurfaceSpec& spec, const OperatorData& data) {
    CharRoutes out;
    out.display = char_display(spec);
    out.assembly = char_class_assembly(spec, data);
    return out;
}

LocalizedClass char_class_closed(const SurfaceSpec& spec) {
    LocalizedClass out = char_display(spec);
    if (!out.is_polynomial()) throw Error(ErrorCode::NotPolynomial, "closed Char class " + to_string(out));
    return out;
}

}  // namespace pcv
