#pragma once

// Eigenvalues in a decidable multiplicative group and their trace orbits {λ, λ⁻¹}.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "pcv/errors.hpp"

namespace pcv {

enum class Backend { Rational, RootOfUnity, Symbolic };
enum class UnitKind { IsOne, IsMinusOne, Generic };

class EigenClass {
public:
    static EigenClass rational(const mpq_class& value);
    // zeta_n^k, stored in lowest terms
    static EigenClass root_of_unity(long n, long k);
    // sign * x1^e1 * ... ; trailing zero exponents are dropped
    static EigenClass symbolic(int sign, std::vector<int> exponents);
    // x_index with 1 <= index <= count
    static EigenClass generator(int index, int count);
    static EigenClass one(Backend b);
    static EigenClass minus_one(Backend b);

    Backend backend() const { return backend_; }
    const mpq_class& rational_value() const { return rat_; }
    long order() const { return n_; }
    long exponent() const { return k_; }
    int sign() const { return sign_; }
    const std::vector<int>& exponents() const { return exps_; }

    friend bool operator==(const EigenClass& a, const EigenClass& b);
    friend bool operator!=(const EigenClass& a, const EigenClass& b) { return !(a == b); }
    // Total order: backend tag first, then the per-backend canonical order.
    friend bool operator<(const EigenClass& a, const EigenClass& b);

private:
    EigenClass() = default;

    Backend backend_ = Backend::Rational;
    mpq_class rat_{1};
    long n_ = 1;
    long k_ = 0;
    int sign_ = 1;
    std::vector<int> exps_;
};

EigenClass eigen_mul(const EigenClass& a, const EigenClass& b);
EigenClass eigen_inv(const EigenClass& a);
EigenClass eigen_neg(const EigenClass& a);
UnitKind classify_unit(const EigenClass& a);

class TraceOrbit {
public:
    const EigenClass& representative() const { return rep_; }
    Backend backend() const { return rep_.backend(); }

    friend bool operator==(const TraceOrbit& a, const TraceOrbit& b) { return a.rep_ == b.rep_; }
    friend bool operator!=(const TraceOrbit& a, const TraceOrbit& b) { return !(a == b); }
    friend bool operator<(const TraceOrbit& a, const TraceOrbit& b) { return a.rep_ < b.rep_; }

private:
    explicit TraceOrbit(EigenClass rep) : rep_(std::move(rep)) {}
    friend TraceOrbit orbit_of(const EigenClass& a);

    EigenClass rep_;
};

// Throws NotAnOrbit for ±1.
TraceOrbit orbit_of(const EigenClass& a);
inline bool orbit_eq(const TraceOrbit& a, const TraceOrbit& b) { return a == b; }

// The orbit of -λ.
inline TraceOrbit orbit_neg(const TraceOrbit& t) { return orbit_of(eigen_neg(t.representative())); }

void require_same_backend(const EigenClass& a, const EigenClass& b);

// "rat:3/2", "zeta:12:5", "sym:x1", "sym:-x1*x2^-1"
std::string to_string(const EigenClass& a);
inline std::string to_string(const TraceOrbit& t) { return to_string(t.representative()); }
// symbolic_count < 0 disables the generator-range check
EigenClass parse_eigen(const std::string& text, int symbolic_count = -1);

}  // namespace pcv
