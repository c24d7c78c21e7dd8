#pragma once

// Command-line front end: flag and job-file parsing, rendering, verify orchestration.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcv/ffcount.hpp"
#include "pcv/io.hpp"

namespace pcv {

struct JobSpec {
    std::string command;  // compute-rep, compute-char, tube-matrix, oracle-count, fit-operators, verify
    int genus = 0;
    int jordan_plus = 0;
    int jordan_minus = 0;
    int minus_id = 0;
    std::vector<std::string> semisimple;  // eigenvalue syntax
    std::vector<int> semisimple_traces;   // oracle-count only
    std::vector<int> primes;
    std::string format = "text";
    bool verify = false;
    bool compare = false;
    std::string data_file;  // empty: ./data/operators.json if present, else the compiled-in cache
    std::int64_t work_limit = kDefaultWorkLimit;
    std::string method = "direct";  // oracle-count: direct or convolution
    // tube-matrix
    std::string kind = "semisimple";
    std::string t0;
    bool unreduced = false;
    std::vector<std::string> sky;
    // fit-operators
    std::string output = "data/operators.json";
    std::vector<std::string> kinds;
    std::vector<int> held_out;
    // verify
    std::vector<int> criteria;
};

// Same field names as JobSpec; throws ParseError on unknown fields or wrong types.
JobSpec job_from_json(const Json& j);

// Renders to `out` and returns the exit status: 0 success, 1 when a requested comparison or
// verification disagrees. Module errors propagate as pcv::Error.
int run_job(const JobSpec& job, std::ostream& out);

// Full entry point. Errors print {"error": {"code", "message"}} to `err`; usage errors exit 2,
// module errors exit 1.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcv
