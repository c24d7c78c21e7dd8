#pragma once

// Z[q] localized at q, q+1 and q-1.

#include <array>
#include <string>

#include "pcv/errors.hpp"
#include "pcv/polynomial.hpp"

namespace pcv {

class LocalizedClass {
public:
    // Denominator slots: q, q+1, q-1.
    using Exponents = std::array<int, 3>;

    LocalizedClass() = default;
    LocalizedClass(int c) : num_(mpz_class(c)) {}
    LocalizedClass(long c) : num_(mpz_class(c)) {}
    LocalizedClass(const mpz_class& c) : num_(c) {}
    LocalizedClass(IntPoly num) : num_(std::move(num)) {}

    static LocalizedClass canonicalize(IntPoly num, Exponents den);
    static LocalizedClass q();
    // q^a (q+1)^b (q-1)^c with integer (possibly negative) exponents
    static LocalizedClass unit(int a, int b, int c);

    const IntPoly& numerator() const { return num_; }
    const Exponents& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_[0] == 0 && den_[1] == 0 && den_[2] == 0; }

    LocalizedClass operator-() const;
    LocalizedClass& operator+=(const LocalizedClass& o) { return *this = *this + o; }
    LocalizedClass& operator-=(const LocalizedClass& o) { return *this = *this - o; }
    LocalizedClass& operator*=(const LocalizedClass& o) { return *this = *this * o; }

    friend LocalizedClass operator+(const LocalizedClass& a, const LocalizedClass& b);
    friend LocalizedClass operator-(const LocalizedClass& a, const LocalizedClass& b);
    friend LocalizedClass operator*(const LocalizedClass& a, const LocalizedClass& b);
    friend bool operator==(const LocalizedClass& a, const LocalizedClass& b) {
        return a.den_ == b.den_ && a.num_ == b.num_;
    }
    friend bool operator!=(const LocalizedClass& a, const LocalizedClass& b) { return !(a == b); }

    LocalizedClass pow(unsigned e) const;

private:
    IntPoly num_;
    Exponents den_{0, 0, 0};
};

// Throws NotAUnit unless b is a unit or divides a exactly.
LocalizedClass divide_exact(const LocalizedClass& a, const LocalizedClass& b);

// Throws PoleAtX when x kills a denominator factor.
mpq_class evaluate_at(const LocalizedClass& a, const mpq_class& x);

std::string to_string(const LocalizedClass& a);
std::string to_string(const IntPoly& p, bool compact = false);

// Strip all factors q, q+1, q-1 from p; returns the cofactor and their multiplicities.
IntPoly strip_distinguished_factors(IntPoly p, LocalizedClass::Exponents& mult);

}  // namespace pcv
