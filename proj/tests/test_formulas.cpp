#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/checks.hpp"
#include "pcv/ffcount.hpp"
#include "pcv/formulas.hpp"

using namespace pcv;

namespace {
LocalizedClass q() { return LocalizedClass::q(); }
EigenClass rat(long n, long d = 1) { return EigenClass::rational(mpq_class(n, d)); }
EigenClass zeta(long n, long k) { return EigenClass::root_of_unity(n, k); }
const OperatorData& data() {
    static const OperatorData d = OperatorData::embedded();
    return d;
}
}  // namespace

TEST_CASE("alpha counts") {
    CHECK(alpha_counts({rat(2)}) == AlphaCounts{0, 0});
    CHECK(alpha_counts({rat(2), rat(1, 2)}) == AlphaCounts{1, 0});
    CHECK(alpha_counts({rat(2), rat(-2)}) == AlphaCounts{0, 1});
    CHECK(alpha_counts({zeta(4, 1), zeta(4, 1)}) == AlphaCounts{1, 1});
    CHECK(alpha_counts({zeta(3, 1), zeta(3, 1), zeta(3, 1)}) == AlphaCounts{1, 0});
    CHECK(alpha_counts({rat(2), rat(2), rat(2), rat(2)}) == AlphaCounts{3, 0});
    CHECK(alpha_counts({}) == AlphaCounts{0, 0});
}

TEST_CASE("alpha count guards") {
    std::vector<EigenClass> many(kMaxPunctures + 1, rat(2));
    CHECK_THROWS_WITH_AS(alpha_counts(many), doctest::Contains("TooManyPunctures"), Error);
    CHECK_THROWS_WITH_AS(alpha_counts({rat(2), zeta(5, 1)}), doctest::Contains("BackendMismatch"), Error);
    CHECK_THROWS_WITH_AS(alpha_counts({rat(1)}), doctest::Contains("InvalidSpec"), Error);
}

TEST_CASE("generic coefficients") {
    auto [a, b, c, d] = generic_coefficients(1);
    CHECK(a.is_zero());
    CHECK(b.is_zero());
    CHECK(c.is_zero());
    CHECK(d.is_zero());
    for (int s = 1; s <= 6; ++s) {
        auto [as, bs, cs, ds] = generic_coefficients(s);
        CHECK(((q() * q() + q()) * as + q() * bs - q() * cs - q() * ds).is_zero());
    }
    CHECK_THROWS_AS(generic_coefficients(0), Error);
}

TEST_CASE("iterated closed form matches the pipeline") {
    for (const auto& eigs : std::vector<std::vector<EigenClass>>{
             {rat(2), rat(1, 2)}, {zeta(4, 1), zeta(4, 1)}, {rat(3), rat(5), rat(-15)}})
        CHECK(iterated_tube_closed_form(eigs) == iterated_semisimple(eigs));
}

TEST_CASE("Rep benchmarks") {
    const EigenClass x1 = EigenClass::generator(1, 1);
    CHECK(rep_class_closed(1, 0, {x1}) == q() * (q() * q() - 1) * (q() * q() + 4 * q() + 1));
    CHECK(rep_class_closed(1, 1, {x1}) == q() * q() * (q() - 1).pow(2) * (q() + 1) * (q() * q() + 2 * q() + 3));
    CHECK(rep_class_closed(2, 0, {rat(2), rat(3)}) == assemble_representation_class({2, 0, 0, 0, {rat(2), rat(3)}}, data()));
    CHECK(rep_class_closed(1, 0, {rat(2), rat(2)}) == assemble_representation_class({1, 0, 0, 0, {rat(2), rat(2)}}, data()));
    CHECK_THROWS_AS(rep_class_closed(0, 0, {x1}), Error);
}

TEST_CASE("Char benchmark") {
    SurfaceSpec torus{1, 0, 0, 0, {EigenClass::generator(1, 1)}};
    CHECK(char_class_closed(torus) == q() * q() + 4 * q() + 1);
    CHECK(char_class_assembly(torus, data()) == q() * q() + 4 * q() + 1);
    CHECK_THROWS_WITH_AS(char_class_assembly({1, 0, 0, 0, {}}, data()), doctest::Contains("OutOfScopeTwisted"), Error);
}

TEST_CASE("reducible locus class counts points") {
    // equal eigenvalues interact through λ·λ^-1 = 1
    for (int p : {5, 7}) {
        GroupData G(p);
        const int t = (2 + (p + 1) / 2) % p;  // eigenvalue 2
        ResidueSurface s{1, 0, 0, 0, {t, t}};
        const EigenClass l = lift_residue_eigenvalue(p, t);
        ReducibleClasses rd = reducible_and_diag_classes(1, {l, l});
        CHECK(evaluate_at(rd.reducible, p) == count_reducible_points(G, s));
        CHECK(evaluate_at(assemble_representation_class(lift_residue_surface(s, p), data()), p) ==
              count_representation_points_convolution(G, s));
    }
}

TEST_CASE("pipeline counts points with Jordan punctures and interaction") {
    GroupData G(5);
    ResidueSurface s{1, 1, 0, 0, {0, 0}};
    LocalizedClass c = assemble_representation_class(lift_residue_surface(s, 5), data());
    CHECK(evaluate_at(c, 5) == count_representation_points_convolution(G, s));
}
