#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "pcv/io.hpp"

using namespace pcv;

namespace {
LocalizedClass q() { return LocalizedClass::q(); }
}  // namespace

TEST_CASE("class round-trip") {
    for (const LocalizedClass& c : {LocalizedClass(0), q() * q() + 4 * q() + 1, LocalizedClass::unit(-2, -1, 3) * (q() + 7),
                                    LocalizedClass(mpz_class("123456789012345678901234567890"))})
        CHECK(class_from_json(class_to_json(c)) == c);
    CHECK(class_to_json(q() + 1).dump() == R"({"num":[[0,"1"],[1,"1"]],"den":[0,0,0]})");
    CHECK(class_from_json(Json::parse(R"({"num":[[2,3]]})")) == 3 * q() * q());
}

TEST_CASE("malformed classes") {
    CHECK_THROWS_WITH_AS(class_from_json(Json::parse(R"({"den":[0,0,0]})")), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_AS(class_from_json(Json::parse(R"({"num":[[-1,"1"]]})")), Error);
    CHECK_THROWS_AS(class_from_json(Json::parse(R"({"num":[[0,"x"]]})")), Error);
    CHECK_THROWS_AS(class_from_json(Json::parse(R"({"num":[],"den":[1,2]})")), Error);
}

TEST_CASE("module element round-trip") {
    ModuleElement v = ModuleElement::generator(Core::S2Sm2, q());
    v.add(orbit_of(EigenClass::generator(1, 2)), q() - 1);
    v.add(orbit_of(parse_eigen("sym:x1*x2^-1")), 5);
    CHECK(module_from_json(module_to_json(v)) == v);
    CHECK_THROWS_AS(module_from_json(Json::parse(R"({"core":{"T9":{"num":[]}}})")), Error);
}

TEST_CASE("operator cache") {
    std::ifstream in(PCV_SOURCE_DIR "/data/operators.json", std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    OperatorData data = operator_data_from_json(buf.str());
    CHECK(data.all().size() == 3);
    // writing it back is byte-identical
    CHECK(render_operator_data(data) == buf.str());
    CHECK(render_operator_data(OperatorData::embedded()) == buf.str());
}

TEST_CASE("tampered operator data is rejected") {
    OperatorData data = OperatorData::embedded();
    Json j = fitted_to_json(data.require(TubeKind::JordanPlus));
    CHECK(fitted_from_json(j).checksum == j["checksum"].get<std::string>());
    j["entries"][2][2][0] = "7";
    CHECK_THROWS_WITH_AS(fitted_from_json(j), doctest::Contains("checksum mismatch"), Error);
    CHECK_THROWS_WITH_AS(operator_data_from_json("{not json"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_AS(operator_data_from_json(R"({"ops":[]})"), Error);
}
