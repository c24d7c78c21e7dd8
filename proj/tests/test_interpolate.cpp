#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/interpolate.hpp"
#include "pcv/io.hpp"
#include "pcv/operators.hpp"

using namespace pcv;

namespace {
std::vector<mpz_class> Z(std::initializer_list<long> xs) {
    std::vector<mpz_class> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}
}  // namespace

TEST_CASE("Lagrange interpolation") {
    // 2x^2 - 3x + 1
    RatPoly p = lagrange_interpolate(Z({1, 2, 3}), Z({0, 3, 10}));
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == -3);
    CHECK(p.coeff(2) == 2);
    RatPoly half = lagrange_interpolate(Z({0, 1}), Z({0, 1}));
    CHECK(half.degree() == 1);
}

TEST_CASE("integral interpolation guards") {
    IntPoly p = interpolate_integral(Z({2, 3, 5, 7}), Z({5, 10, 26, 50}), 2);
    CHECK(p == IntPoly({1, 0, 1}));
    // x(x-1)/2 has half-integer coefficients
    CHECK_THROWS_WITH_AS(interpolate_integral(Z({0, 1, 2, 3}), Z({0, 0, 1, 3}), 3), doctest::Contains("NonIntegralFit"),
                         Error);
    CHECK_THROWS_WITH_AS(interpolate_integral(Z({2, 3, 5, 7}), Z({8, 27, 125, 343}), 2),
                         doctest::Contains("NonIntegralFit"), Error);
}

TEST_CASE("validation trace") {
    CHECK(split_test_trace(13) == 1);  // 4 + 10
    CHECK(split_test_trace(29) == (4 + 22) % 29);
    CHECK_THROWS_AS(split_test_trace(3), Error);
    CHECK_THROWS_AS(split_test_trace(15), Error);
    CHECK_THROWS_WITH_AS(split_test_trace(17), doctest::Contains("ValidationFailed"), Error);
}

TEST_CASE("tube kind names") {
    for (TubeKind k : {TubeKind::Handle, TubeKind::JordanPlus, TubeKind::JordanMinus, TubeKind::Semisimple})
        CHECK(parse_tube_kind(tube_kind_name(k)) == k);
    CHECK_FALSE(parse_tube_kind("Bogus").has_value());
}

TEST_CASE("Jordan refit reproduces the cache") {
    const OperatorData cache = OperatorData::embedded();
    for (TubeKind k : {TubeKind::JordanPlus, TubeKind::JordanMinus}) {
        FittedOperator f = fit_core_matrix(k, default_fit_primes(k), default_held_out_primes(k));
        CHECK(f.checksum == cache.require(k).checksum);
        CHECK(f.entries == cache.require(k).entries);
        CHECK(compute_checksum(f) == f.checksum);
    }
}

TEST_CASE("fitting needs enough primes") {
    CHECK_THROWS_WITH_AS(fit_core_matrix(TubeKind::JordanPlus, {13, 17, 29}, {}), doctest::Contains("ValidationFailed"),
                         Error);
}

TEST_CASE("Jordan skyscraper column fit") {
    SkyColumnFit f = fit_sky_column(TubeKind::JordanPlus, default_validation_primes(), default_validation_held_out());
    const IntPoly pgl{0, -1, 0, 1};
    CHECK(f.core[core_index(Core::Tp)] == pgl);
    CHECK(f.core[core_index(Core::Tm)] == pgl);
    CHECK(f.core[core_index(Core::TTheta)] == pgl);
    CHECK(f.core[core_index(Core::T2)].is_zero());
    CHECK(f.same == pgl);
    CHECK(f.negated.is_zero());
}
