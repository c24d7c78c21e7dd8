#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/kring.hpp"

using namespace pcv;

namespace {
LocalizedClass q() { return LocalizedClass::q(); }
}  // namespace

TEST_CASE("ring arithmetic") {
    LocalizedClass a = q() * q() + 4 * q() + 1;
    CHECK(to_string(a) == "q^2 + 4q + 1");
    CHECK(a - a == LocalizedClass(0));
    CHECK((a * a).numerator().degree() == 4);
    CHECK((q() + 1).pow(3) == q().pow(3) + 3 * q().pow(2) + 3 * q() + 1);
    CHECK(-(q() - 1) == 1 - q());
}

TEST_CASE("canonical form strips q, q+1, q-1") {
    LocalizedClass inv = LocalizedClass::unit(0, -1, 0);
    CHECK_FALSE(inv.is_polynomial());
    CHECK((q() * q() - 1) * inv == q() - 1);
    CHECK((q() * q() - 1) * inv == q() - 1);
    CHECK(LocalizedClass::unit(-1, 0, 0) * q() == LocalizedClass(1));
    LocalizedClass x = LocalizedClass::unit(-2, -1, -1) * (q().pow(4) - q().pow(2));
    CHECK(x == LocalizedClass(1));
    CHECK(LocalizedClass::unit(2, 1, 0) == q() * q() * (q() + 1));
}

TEST_CASE("exact division") {
    LocalizedClass pgl = q().pow(3) - q();
    CHECK(divide_exact(pgl * (q() * q() + 1), pgl) == q() * q() + 1);
    CHECK(divide_exact(q() * q() + 1, q() * q() + 1) == LocalizedClass(1));
    CHECK(divide_exact(q(), q() + 1) == q() * LocalizedClass::unit(0, -1, 0));
    CHECK_THROWS_WITH_AS(divide_exact(q() + 2, q() * q() + 1), doctest::Contains("NotAUnit"), Error);
}

TEST_CASE("evaluation") {
    CHECK(evaluate_at(q() * q() + 4 * q() + 1, 3) == 22);
    CHECK(evaluate_at(LocalizedClass::unit(0, 0, -1), 3) == mpq_class(1, 2));
    CHECK_THROWS_WITH_AS(evaluate_at(LocalizedClass::unit(0, 0, -1), 1), doctest::Contains("PoleAtX"), Error);
    CHECK_THROWS_AS(evaluate_at(LocalizedClass::unit(-1, 0, 0), 0), Error);
}

TEST_CASE("strip distinguished factors") {
    LocalizedClass::Exponents m{0, 0, 0};
    IntPoly p = (q().pow(2) * (q() + 1) * (q() - 1).pow(3) * (q() * q() + 1)).numerator();
    IntPoly rest = strip_distinguished_factors(p, m);
    CHECK(m == LocalizedClass::Exponents{2, 1, 3});
    CHECK(LocalizedClass(rest) == q() * q() + 1);
}
