#pragma once

// Exact reconstruction of tube matrices from finite-field counts across primes.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pcv/ffcount.hpp"
#include "pcv/polynomial.hpp"

namespace pcv {

enum class TubeKind { Handle, JordanPlus, JordanMinus, Semisimple };

const char* tube_kind_name(TubeKind k);
std::optional<TubeKind> parse_tube_kind(const std::string& name);

template <std::size_t Rows>
using PolyTable = std::array<std::array<IntPoly, 8>, Rows>;  // [row][column]
using PolyMatrix = PolyTable<8>;
using CountMatrix = std::array<std::array<mpz_class, 8>, 8>;

// Core matrix of Z(L) or Z(L_[J±]) with the free (q^3-q) factor of the span extracted.
struct FittedOperator {
    TubeKind kind = TubeKind::Handle;
    int degree_bound = 0;
    std::vector<int> primes;
    std::vector<int> held_out;
    PolyMatrix entries;
    std::string prefactor = "(q^3-q)";
    std::string checksum;
};

int default_degree_bound(TubeKind kind);
std::vector<int> default_fit_primes(TubeKind kind);
std::vector<int> default_held_out_primes(TubeKind kind);

// Unique polynomial of degree < xs.size() through the points, over Q.
RatPoly lagrange_interpolate(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys);
// Throws NonIntegralFit for fractional coefficients or degree above the bound.
IntPoly interpolate_integral(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys, int degree_bound);

// Per-prime weighted counts of the core matrix, without the free h factor.
CountMatrix core_counts(int p, TubeKind kind);

FittedOperator fit_core_matrix(TubeKind kind, const std::vector<int>& primes,
                               const std::vector<int>& held_out = {}, int degree_bound = -1);

std::string compute_checksum(const FittedOperator& op);

// Validation modes. The eigenvalue 4 (a square, so the counts carry no character twist)
// supplies the split trace t = 4 + 1/4; primes where 4^2 = ±1 are rejected.
int split_test_trace(int p);
std::vector<int> default_validation_primes();
std::vector<int> default_validation_held_out();

// Columns of the unreduced semisimple tube at t0, rows 8 and 9 holding T_{t0} and T_{-t0}.
struct SemisimpleFit {
    PolyTable<10> rows;
    std::vector<int> primes;
};
SemisimpleFit fit_semisimple_columns(const std::vector<int>& primes, const std::vector<int>& held_out, int degree_bound = 6);

// Image of a skyscraper T_t: core coordinates plus the T_t and T_{-t} coefficients.
struct SkyColumnFit {
    std::array<IntPoly, 8> core;
    IntPoly same;
    IntPoly negated;
};
SkyColumnFit fit_sky_column(TubeKind kind, const std::vector<int>& primes, const std::vector<int>& held_out,
                            int degree_bound = 8);

}  // namespace pcv
