#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "pcv/cli.hpp"

using namespace pcv;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pcv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("compute-char on the once-punctured torus") {
    Run r = run({"compute-char", "--genus", "1", "--semisimple", "sym:x1"});
    CHECK(r.status == 0);
    CHECK(r.out == "q^2 + 4q + 1\n");
}

TEST_CASE("compute-rep with verify") {
    Run r = run({"compute-rep", "--genus", "1", "--semisimple", "rat:2", "--verify"});
    CHECK(r.status == 0);
    CHECK(r.out == "q^5 + 4q^4 - 4q^2 - q\nverify: closed formula agrees\n");
}

TEST_CASE("compute-rep reduces [J-] and -Id") {
    Run a = run({"compute-rep", "--genus", "1", "--jordan-minus", "1", "--minus-id", "1", "--semisimple", "rat:2/1",
                 "--format", "json"});
    Run b = run({"compute-rep", "--genus", "1", "--jordan-plus", "1", "--semisimple", "rat:2"});
    REQUIRE(a.status == 0);
    Json j = Json::parse(a.out);
    CHECK(j["reduced"]["jordan"] == 1);
    CHECK(j["reduced"]["sigma"] == 1);
    CHECK(j["class"]["pretty"].get<std::string>() + "\n" == b.out);
    CHECK(class_from_json(j["class"]) == class_from_json(class_to_json(class_from_json(j["class"]))));
}

TEST_CASE("output is deterministic") {
    std::vector<std::string> args = {"compute-rep", "--genus", "1", "--semisimple", "zeta:4:1", "--semisimple",
                                     "zeta:4:1", "--format", "json", "--verify"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("oracle-count") {
    Run r = run({"oracle-count", "--prime", "3", "--prime", "5", "--genus", "1"});
    CHECK(r.status == 0);
    CHECK(r.out == "p=3 count=168\np=5 count=1080\n");
    Run c = run({"oracle-count", "--prime", "7", "--genus", "1", "--semisimple-trace", "6", "--compare"});
    CHECK(c.status == 0);
    CHECK(c.out == "p=7 count=26208 class(p)=26208 agree\n");
    Run conv = run({"oracle-count", "--prime", "7", "--genus", "1", "--semisimple", "rat:3", "--method", "convolution",
                    "--format", "json"});
    CHECK(conv.status == 0);
    CHECK(Json::parse(conv.out)["results"][0]["traces"][0] == (3 + 5) % 7);
}

TEST_CASE("tube-matrix") {
    Run r = run({"tube-matrix", "--kind", "semisimple", "--t0", "zeta:4:1", "--unreduced"});
    CHECK(r.status == 0);
    CHECK(r.out.rfind("T2 -> ", 0) == 0);
    Run j = run({"tube-matrix", "--kind", "jordan-plus", "--sky", "rat:3", "--format", "json"});
    CHECK(j.status == 0);
    CHECK(Json::parse(j.out)["columns"].size() == 9);
    Run bad = run({"tube-matrix", "--kind", "semisimple"});
    CHECK(bad.status == 2);
}

TEST_CASE("errors are JSON with stable codes") {
    Run parse = run({"compute-rep", "--genus", "1", "--semisimple", "bogus:1"});
    CHECK(parse.status == 2);
    CHECK(Json::parse(parse.err)["error"]["code"] == "ParseError");

    Run invalid = run({"compute-rep", "--genus", "1", "--semisimple", "rat:-1"});
    CHECK(invalid.status == 1);
    CHECK(Json::parse(invalid.err)["error"]["code"] == "InvalidSpec");

    Run twisted = run({"compute-rep", "--genus", "1", "--jordan-minus", "1"});
    CHECK(Json::parse(twisted.err)["error"]["code"] == "OutOfScopeTwisted");

    Run usage = run({"compute-rep", "--no-such-flag"});
    CHECK(usage.status == 2);
    CHECK(Json::parse(usage.err)["error"]["code"] == "UsageError");

    Run prime = run({"oracle-count", "--prime", "8", "--genus", "1"});
    CHECK(Json::parse(prime.err)["error"]["code"] == "NotPrime");

    Run missing = run({"compute-rep", "--genus", "1", "--data-file", "/nonexistent.json"});
    CHECK(Json::parse(missing.err)["error"]["code"] == "MissingOperatorData");
}

TEST_CASE("job files") {
    {
        std::ofstream f("job_char.json");
        f << R"({"command": "compute-char", "genus": 1, "semisimple": ["sym:x1"], "format": "json"})";
    }
    Run r = run({"--job", "job_char.json"});
    CHECK(r.status == 0);
    CHECK(Json::parse(r.out)["class"]["pretty"] == "q^2 + 4q + 1");
    {
        std::ofstream f("job_bad.json");
        f << R"({"command": "compute-char", "genes": 1})";
    }
    Run bad = run({"--job", "job_bad.json"});
    CHECK(bad.status == 2);
    CHECK(Json::parse(bad.err)["error"]["code"] == "ParseError");
}

TEST_CASE("verify subset") {
    Run r = run({"verify", "--criterion", "1", "--criterion", "3"});
    CHECK(r.status == 0);
    CHECK(r.out.find("criterion 1: PASS") != std::string::npos);
    CHECK(r.out.find("criterion 3: PASS") != std::string::npos);
}

TEST_CASE("fit-operators writes the cache layout") {
    Run r = run({"fit-operators", "--kind", "JordanPlus", "--output", "jplus.json"});
    REQUIRE(r.status == 0);
    std::ifstream in("jplus.json");
    std::stringstream buf;
    buf << in.rdbuf();
    OperatorData written = OperatorData::from_json_text(buf.str());
    CHECK(written.require(TubeKind::JordanPlus).checksum ==
          OperatorData::embedded().require(TubeKind::JordanPlus).checksum);
}
