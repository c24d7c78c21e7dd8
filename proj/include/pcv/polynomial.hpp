#pragma once

// Dense univariate polynomials, low-to-high coefficient order.

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace pcv {

namespace detail {

inline std::optional<mpz_class> exact_quotient(const mpz_class& a, const mpz_class& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::optional<mpq_class> exact_quotient(const mpq_class& a, const mpq_class& b) {
    return mpq_class(a / b);
}

}  // namespace detail

template <typename C>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const C& c) {
        if (c != 0) coeffs_.push_back(c);
    }
    Polynomial(int c) : Polynomial(C(c)) {}
    explicit Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<C> coeffs) : coeffs_(coeffs) { trim(); }

    static Polynomial monomial(const C& c, int exp) {
        std::vector<C> v(exp + 1, C(0));
        v[exp] = c;
        return Polynomial(std::move(v));
    }

    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<C>& coeffs() const { return coeffs_; }
    C coeff(int i) const { return (i >= 0 && i <= degree()) ? coeffs_[i] : C(0); }
    const C& leading() const { return coeffs_.back(); }

    template <typename X>
    X evaluate(const X& x) const {
        X acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = X(acc * x + X(*it));
        return acc;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), C(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), C(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<C> v(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    // Exact division by (x - root); nullopt when the remainder is nonzero.
    std::optional<Polynomial> divide_linear(const C& root) const {
        if (is_zero()) return Polynomial();
        std::vector<C> quo(coeffs_.size() - 1, C(0));
        C carry(0);
        for (int i = degree(); i >= 1; --i) {
            carry = carry * root + coeffs_[i];
            quo[i - 1] = carry;
        }
        C rem = carry * root + coeffs_[0];
        if (rem != 0) return std::nullopt;
        return Polynomial(std::move(quo));
    }

    // Exact long division; nullopt if d does not divide *this over C.
    std::optional<Polynomial> divide_exact(const Polynomial& d) const {
        if (d.is_zero()) return std::nullopt;
        std::vector<C> rem = coeffs_;
        int dd = d.degree();
        if (degree() < dd) {
            if (is_zero()) return Polynomial();
            return std::nullopt;
        }
        std::vector<C> quo(degree() - dd + 1, C(0));
        for (int i = degree(); i >= dd; --i) {
            if (rem[i] == 0) continue;
            auto c = detail::exact_quotient(rem[i], d.leading());
            if (!c) return std::nullopt;
            quo[i - dd] = *c;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= *c * d.coeffs_[j];
        }
        for (int i = 0; i < dd; ++i)
            if (rem[i] != 0) return std::nullopt;
        return Polynomial(std::move(quo));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<C> coeffs_;
};

using IntPoly = Polynomial<mpz_class>;
using RatPoly = Polynomial<mpq_class>;

}  // namespace pcv
