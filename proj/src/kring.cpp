#include "pcv/kring.hpp"

#include <sstream>

namespace pcv {

namespace {

const IntPoly& factor(int slot) {
    static const IntPoly f[3] = {IntPoly({0, 1}), IntPoly({1, 1}), IntPoly({-1, 1})};
    return f[slot];
}

const mpz_class& factor_root(int slot) {
    static const mpz_class r[3] = {0, -1, 1};
    return r[slot];
}

IntPoly factor_power(int slot, int e) {
    IntPoly r(1);
    for (int i = 0; i < e; ++i) r *= factor(slot);
    return r;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::PoleAtX: return "PoleAtX";
        case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::GeneratorOutOfRange: return "GeneratorOutOfRange";
        case ErrorCode::BackendMismatch: return "BackendMismatch";
        case ErrorCode::NotAnOrbit: return "NotAnOrbit";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MissingOperatorData: return "MissingOperatorData";
        case ErrorCode::OutOfScopeTwisted: return "OutOfScopeTwisted";
        case ErrorCode::NotPolynomial: return "NotPolynomial";
        case ErrorCode::PrimeTooLarge: return "PrimeTooLarge";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::WorkLimitExceeded: return "WorkLimitExceeded";
        case ErrorCode::ProfileSystemSingular: return "ProfileSystemSingular";
        case ErrorCode::ResidualNonzero: return "ResidualNonzero";
        case ErrorCode::NonIntegralFit: return "NonIntegralFit";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::TooManyPunctures: return "TooManyPunctures";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

IntPoly strip_distinguished_factors(IntPoly p, LocalizedClass::Exponents& mult) {
    mult = {0, 0, 0};
    if (p.is_zero()) return p;
    for (int slot = 0; slot < 3; ++slot) {
        while (auto quo = p.divide_linear(factor_root(slot))) {
            p = std::move(*quo);
            ++mult[slot];
        }
    }
    return p;
}

LocalizedClass LocalizedClass::canonicalize(IntPoly num, Exponents den) {
    LocalizedClass r;
    if (num.is_zero()) return r;
    for (int slot = 0; slot < 3; ++slot) {
        if (den[slot] < 0) {
            num *= factor_power(slot, -den[slot]);
            den[slot] = 0;
        }
        while (den[slot] > 0) {
            auto quo = num.divide_linear(factor_root(slot));
            if (!quo) break;
            num = std::move(*quo);
            --den[slot];
        }
    }
    r.num_ = std::move(num);
    r.den_ = den;
    return r;
}

LocalizedClass LocalizedClass::q() { return LocalizedClass(IntPoly({0, 1})); }

LocalizedClass LocalizedClass::unit(int a, int b, int c) { return canonicalize(IntPoly(1), {-a, -b, -c}); }

LocalizedClass LocalizedClass::operator-() const {
    LocalizedClass r = *this;
    r.num_ = -r.num_;
    return r;
}

namespace {

LocalizedClass add_impl(const LocalizedClass& a, const LocalizedClass& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    LocalizedClass::Exponents den;
    IntPoly na = a.numerator(), nb = b.numerator();
    for (int slot = 0; slot < 3; ++slot) {
        int da = a.denominator()[slot], db = b.denominator()[slot];
        den[slot] = std::max(da, db);
        if (da < den[slot]) na *= factor_power(slot, den[slot] - da);
        if (db < den[slot]) nb *= factor_power(slot, den[slot] - db);
    }
    if (subtract) na -= nb;
    else na += nb;
    return LocalizedClass::canonicalize(std::move(na), den);
}

}  // namespace

LocalizedClass operator+(const LocalizedClass& a, const LocalizedClass& b) { return add_impl(a, b, false); }
LocalizedClass operator-(const LocalizedClass& a, const LocalizedClass& b) { return add_impl(a, b, true); }

LocalizedClass operator*(const LocalizedClass& a, const LocalizedClass& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LocalizedClass::Exponents den;
    for (int slot = 0; slot < 3; ++slot) den[slot] = a.den_[slot] + b.den_[slot];
    return LocalizedClass::canonicalize(a.num_ * b.num_, den);
}

LocalizedClass LocalizedClass::pow(unsigned e) const {
    LocalizedClass result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

LocalizedClass divide_exact(const LocalizedClass& a, const LocalizedClass& b) {
    if (b.is_zero()) throw Error(ErrorCode::NotAUnit, "division by zero");
    if (a.is_zero()) return {};
    LocalizedClass::Exponents mult;
    IntPoly rest = strip_distinguished_factors(b.numerator(), mult);
    IntPoly num = a.numerator();
    LocalizedClass::Exponents den;
    for (int slot = 0; slot < 3; ++slot) {
        num *= factor_power(slot, b.denominator()[slot]);
        den[slot] = a.denominator()[slot] + mult[slot];
    }
    LocalizedClass x = LocalizedClass::canonicalize(std::move(num), den);
    auto quo = x.numerator().divide_exact(rest);
    if (!quo) throw Error(ErrorCode::NotAUnit, to_string(b) + " does not divide " + to_string(a));
    return LocalizedClass::canonicalize(std::move(*quo), x.denominator());
}

mpq_class evaluate_at(const LocalizedClass& a, const mpq_class& x) {
    const auto& den = a.denominator();
    mpq_class d(1);
    for (int slot = 0; slot < 3; ++slot) {
        if (den[slot] == 0) continue;
        mpq_class f = x - mpq_class(factor_root(slot));
        if (f == 0) throw Error(ErrorCode::PoleAtX, "denominator vanishes at q = " + x.get_str());
        for (int i = 0; i < den[slot]; ++i) d *= f;
    }
    mpq_class n = a.numerator().evaluate(x);
    return mpq_class(n / d);
}

std::string to_string(const IntPoly& p, bool compact) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = p.degree(); e >= 0; --e) {
        const mpz_class& c = p.coeffs()[e];
        if (c == 0) continue;
        mpz_class mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (compact ? (c < 0 ? "-" : "+") : (c < 0 ? " - " : " + "));
        }
        first = false;
        if (e == 0 || mag != 1) os << mag.get_str();
        if (e >= 1) os << "q";
        if (e >= 2) os << "^" << e;
    }
    return os.str();
}

std::string to_string(const LocalizedClass& a) {
    if (a.is_polynomial()) return to_string(a.numerator());
    const IntPoly& n = a.numerator();
    int terms = 0;
    for (const auto& c : n.coeffs())
        if (c != 0) ++terms;
    std::string out = terms > 1 ? "(" + to_string(n, true) + ")" : to_string(n, true);
    out += "/";
    static const char* names[3] = {"q", "(q+1)", "(q-1)"};
    for (int slot = 0; slot < 3; ++slot) {
        int e = a.denominator()[slot];
        if (e == 0) continue;
        out += names[slot];
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace pcv
