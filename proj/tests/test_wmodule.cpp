#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/wmodule.hpp"

using namespace pcv;

TEST_CASE("generator names") {
    for (int i = 0; i < kCoreCount; ++i) CHECK(parse_core_name(core_name(core_at(i))) == core_at(i));
    CHECK_FALSE(parse_core_name("T7").has_value());
}

TEST_CASE("addition and cancellation") {
    const TraceOrbit t = orbit_of(EigenClass::rational(2));
    ModuleElement v = ModuleElement::generator(Core::TTheta, LocalizedClass::q());
    v.add(t, 3);
    CHECK(coefficient_of(v, Core::TTheta) == LocalizedClass::q());
    CHECK(coefficient_of(v, orbit_of(EigenClass::rational(mpq_class(1, 2)))) == LocalizedClass(3));
    v.add(t, -3);
    CHECK(v.sky().empty());
    CHECK((v - v).is_zero());
    CHECK(2 * v == v + v);
}

TEST_CASE("core part is an Eigen vector") {
    CoreMatrix m = zero_core_matrix();
    m(core_index(Core::T2), core_index(Core::Tp)) = LocalizedClass::q();
    ModuleElement v = ModuleElement::generator(Core::Tp, 2);
    ModuleElement w = ModuleElement::from_core(m * v.core());
    CHECK(w == ModuleElement::generator(Core::T2, 2 * LocalizedClass::q()));
}

TEST_CASE("skyscrapers from different backends do not mix") {
    ModuleElement v = ModuleElement::generator(orbit_of(EigenClass::rational(2)));
    CHECK_THROWS_AS(v.add(orbit_of(EigenClass::root_of_unity(5, 1)), 1), Error);
    CHECK(v.sky_backend() == Backend::Rational);
}

TEST_CASE("printing is deterministic") {
    ModuleElement v = ModuleElement::generator(Core::T2);
    v.add(orbit_of(EigenClass::rational(3)), LocalizedClass::q());
    v.add(orbit_of(EigenClass::rational(2)), 1);
    CHECK(to_string(v) == to_string(ModuleElement(v)));
    CHECK(to_string(v).find("T2") != std::string::npos);
}
