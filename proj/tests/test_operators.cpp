#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/operators.hpp"

using namespace pcv;

namespace {
LocalizedClass q() { return LocalizedClass::q(); }
LocalizedClass pgl() { return q().pow(3) - q(); }
const OperatorData& data() {
    static const OperatorData d = OperatorData::embedded();
    return d;
}
}  // namespace

TEST_CASE("eta and its inverse") {
    CoreMatrix prod = eta_core_matrix() * eta_inverse_core_matrix();
    for (int i = 0; i < kCoreCount; ++i)
        for (int j = 0; j < kCoreCount; ++j) CHECK(prod(i, j) == LocalizedClass(i == j ? 1 : 0));
    ModuleElement t = ModuleElement::generator(orbit_of(EigenClass::rational(5)));
    CHECK(eta_apply(t) == (q() * q() + q()) * t);
    CHECK(eta_inverse_apply(eta_apply(t)) == t);
}

TEST_CASE("reduced semisimple tube is the unreduced one after eta^-1") {
    const TraceOrbit t0 = orbit_of(EigenClass::generator(1, 2));
    TubeOperator red = semisimple_tube(t0, true), unred = semisimple_tube(t0, false);
    for (int k = 0; k < kCoreCount; ++k) {
        ModuleElement e = ModuleElement::generator(core_at(k));
        CHECK(red.apply(e) == unred.apply(eta_inverse_apply(e)));
    }
    ModuleElement sky = ModuleElement::generator(orbit_of(EigenClass::generator(2, 2)));
    CHECK(red.apply(sky) == unred.apply(eta_inverse_apply(sky)));
}

TEST_CASE("semisimple tube rejects a foreign backend") {
    TubeOperator op = semisimple_tube(orbit_of(EigenClass::rational(2)));
    CHECK_THROWS_AS(op.apply(ModuleElement::generator(orbit_of(EigenClass::root_of_unity(5, 1)))), Error);
}

TEST_CASE("skyscraper deltas") {
    CHECK(sky_delta(EigenClass::one(Backend::Rational)) ==
          ModuleElement::generator(Core::T2) + ModuleElement::generator(Core::Tp, q() - 1));
    CHECK(sky_delta(EigenClass::minus_one(Backend::Rational)) ==
          ModuleElement::generator(Core::Tm2) + ModuleElement::generator(Core::Tm, q() - 1));
    CHECK(sky_delta(EigenClass::rational(4)) == ModuleElement::generator(orbit_of(EigenClass::rational(4)), q()));
}

TEST_CASE("Jordan skyscraper rule") {
    const TraceOrbit t = orbit_of(EigenClass::rational(3));
    ModuleElement expected = ModuleElement::generator(Core::Tp) + ModuleElement::generator(Core::Tm) +
                             ModuleElement::generator(Core::TTheta) + ModuleElement::generator(orbit_neg(t));
    CHECK(jordan_tube(-1, data(), false).apply(ModuleElement::generator(t)) == pgl() * pgl() * expected);
}

TEST_CASE("closed surfaces") {
    // torus: q^4 + 4q^3 - q^2 - 4q, which counts 168 points at p = 3
    SurfaceSpec torus{1, 0, 0, 0, {}};
    LocalizedClass c = assemble_representation_class(torus, data());
    CHECK(c == q().pow(4) + 4 * q().pow(3) - q() * q() - 4 * q());
    CHECK(evaluate_at(c, 3) == 168);
    CHECK(evaluate_at(assemble_representation_class({2, 0, 0, 0, {}}, data()), 3) == 53376);
}

TEST_CASE("holonomy reduction") {
    SurfaceSpec s{1, 0, 1, 1, {EigenClass::rational(2)}};
    ReducedSurface r = reduce_holonomies(s);
    CHECK(r.r == 1);
    CHECK(r.sigma == 1);
    CHECK(r.semisimple[0] == EigenClass::rational(2));
    s.minus_id = 0;
    r = reduce_holonomies(s);
    CHECK(r.sigma == -1);
    CHECK(r.semisimple[0] == EigenClass::rational(-2));
    CHECK_THROWS_WITH_AS(reduce_holonomies({1, 0, 1, 0, {}}), doctest::Contains("OutOfScopeTwisted"), Error);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_WITH_AS(validate_spec({1, 0, 0, 0, {EigenClass::rational(-1)}}), doctest::Contains("InvalidSpec"),
                         Error);
    CHECK_THROWS_WITH_AS(validate_spec({1, 0, 0, 0, {EigenClass::rational(2), EigenClass::root_of_unity(5, 1)}}),
                         doctest::Contains("BackendMismatch"), Error);
    CHECK_THROWS_AS(validate_spec({-1, 0, 0, 0, {}}), Error);
}

TEST_CASE("operator data") {
    CHECK(data().has(TubeKind::Handle));
    CHECK(data().has(TubeKind::JordanPlus));
    CHECK(data().has(TubeKind::JordanMinus));
    OperatorData empty;
    CHECK_THROWS_WITH_AS(empty.require(TubeKind::Handle), doctest::Contains("MissingOperatorData"), Error);
    CHECK_THROWS_WITH_AS(handle_tube(empty), doctest::Contains("MissingOperatorData"), Error);
    CHECK_THROWS_WITH_AS(OperatorData::load("/nonexistent/operators.json"), doctest::Contains("MissingOperatorData"),
                         Error);
    CHECK(OperatorData::load(PCV_SOURCE_DIR "/data/operators.json").require(TubeKind::Handle).checksum ==
          data().require(TubeKind::Handle).checksum);
}
