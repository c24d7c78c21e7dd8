#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/eigenvalue.hpp"

using namespace pcv;

TEST_CASE("rational backend") {
    EigenClass two = EigenClass::rational(2);
    CHECK(eigen_mul(two, eigen_inv(two)) == EigenClass::one(Backend::Rational));
    CHECK(classify_unit(eigen_neg(EigenClass::one(Backend::Rational))) == UnitKind::IsMinusOne);
    CHECK(classify_unit(two) == UnitKind::Generic);
    CHECK(to_string(EigenClass::rational(mpq_class(-3, 2))) == "rat:-3/2");
    CHECK_THROWS_AS(EigenClass::rational(0), Error);
}

TEST_CASE("root-of-unity backend") {
    EigenClass i = EigenClass::root_of_unity(4, 1);
    CHECK(EigenClass::root_of_unity(8, 2) == i);
    CHECK(classify_unit(eigen_mul(i, i)) == UnitKind::IsMinusOne);
    CHECK(eigen_neg(i) == eigen_inv(i));
    CHECK(classify_unit(EigenClass::root_of_unity(3, 3)) == UnitKind::IsOne);
    CHECK_THROWS_AS(EigenClass::root_of_unity(0, 1), Error);
}

TEST_CASE("symbolic backend") {
    EigenClass x1 = EigenClass::generator(1, 2), x2 = EigenClass::generator(2, 2);
    EigenClass p = eigen_mul(x1, eigen_inv(x2));
    CHECK(to_string(p) == "sym:x1*x2^-1");
    CHECK(classify_unit(eigen_mul(p, eigen_mul(x2, eigen_inv(x1)))) == UnitKind::IsOne);
    CHECK(classify_unit(eigen_neg(eigen_mul(x1, eigen_inv(x1)))) == UnitKind::IsMinusOne);
    CHECK_THROWS_AS(EigenClass::generator(3, 2), Error);
}

TEST_CASE("parse and print round-trip") {
    for (const char* text : {"rat:2", "rat:-1/3", "zeta:5:2", "sym:x1", "sym:-x1*x2^-1", "sym:x2^3"})
        CHECK(to_string(parse_eigen(text)) == text);
    CHECK(parse_eigen("zeta:12:3") == EigenClass::root_of_unity(4, 1));
    CHECK_THROWS_WITH_AS(parse_eigen("foo:1"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_eigen("rat:abc"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_eigen("sym:x3", 2), doctest::Contains("GeneratorOutOfRange"), Error);
}

TEST_CASE("trace orbits") {
    EigenClass l = EigenClass::rational(3);
    CHECK(orbit_of(l) == orbit_of(eigen_inv(l)));
    CHECK(orbit_of(l) != orbit_neg(orbit_of(l)));
    CHECK(orbit_neg(orbit_neg(orbit_of(l))) == orbit_of(l));
    CHECK_THROWS_AS(orbit_of(EigenClass::one(Backend::Symbolic)), Error);
}

TEST_CASE("backends do not mix") {
    CHECK_THROWS_WITH_AS(eigen_mul(EigenClass::rational(2), EigenClass::root_of_unity(5, 1)),
                         doctest::Contains("BackendMismatch"), Error);
    CHECK_THROWS_AS(require_same_backend(EigenClass::rational(2), EigenClass::generator(1, 1)), Error);
}
