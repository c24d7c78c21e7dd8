#pragma once

// Acceptance checks 1-9, shared by the acceptance binary and `pcv verify`.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcv/eigenvalue.hpp"
#include "pcv/ffcount.hpp"
#include "pcv/operators.hpp"

namespace pcv {

struct CheckResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> notes;  // one line per failed or noteworthy case
    double seconds = 0;
};

struct CheckOptions {
    std::int64_t work_limit = kDefaultWorkLimit;
    unsigned seed = 20240607;
};

// Lifts the eigenvalue of a semisimple residue trace to the root-of-unity backend: the
// discrete log in F_p^* (split) or F_{p^2}^* (nonsplit) gives zeta:(p-1):k or zeta:(p^2-1):k,
// so products are ±1 over Q exactly when they are ±1 mod p. Throws InvalidSpec at t = ±2.
EigenClass lift_residue_eigenvalue(int p, int trace);
// Inverse direction for the split case: the residue trace of a rational eigenvalue.
int residue_trace(const EigenClass& l, int p);

SurfaceSpec lift_residue_surface(const ResidueSurface& s, int p);

// T2 coefficient of the pipeline run literally: [J-] tubes and a final -Id shift, no σ-reduction.
LocalizedClass assemble_without_reduction(const SurfaceSpec& spec, const OperatorData& data);

CheckResult run_check(int id, const OperatorData& data, const CheckOptions& opt = {},
                      const std::map<int, CheckResult>& earlier = {});
std::vector<CheckResult> run_checks(const std::vector<int>& ids, const OperatorData& data,
                                    const CheckOptions& opt = {});

std::string format_check_line(const CheckResult& r);

}  // namespace pcv
