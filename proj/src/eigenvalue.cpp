#include "pcv/eigenvalue.hpp"

#include <numeric>
#include <sstream>

namespace pcv {

namespace {

int padded(const std::vector<int>& v, std::size_t i) { return i < v.size() ? v[i] : 0; }

// Lexicographic comparison of exponent vectors padded with zeros.
int compare_exps(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int x = padded(a, i), y = padded(b, i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Rational: return "rational";
        case Backend::RootOfUnity: return "root-of-unity";
        case Backend::Symbolic: return "symbolic";
    }
    return "?";
}

}  // namespace

void require_same_backend(const EigenClass& a, const EigenClass& b) {
    if (a.backend() != b.backend())
        throw Error(ErrorCode::BackendMismatch,
                    std::string(backend_name(a.backend())) + " vs " + backend_name(b.backend()));
}

EigenClass EigenClass::rational(const mpq_class& value) {
    if (value == 0) throw Error(ErrorCode::ZeroEigenvalue, "rational eigenvalue must be nonzero");
    EigenClass e;
    e.backend_ = Backend::Rational;
    e.rat_ = value;
    e.rat_.canonicalize();
    return e;
}

EigenClass EigenClass::root_of_unity(long n, long k) {
    if (n < 1) throw Error(ErrorCode::BadOrder, "root of unity order must be >= 1, got " + std::to_string(n));
    k %= n;
    if (k < 0) k += n;
    long g = std::gcd(n, k);
    EigenClass e;
    e.backend_ = Backend::RootOfUnity;
    e.n_ = n / g;
    e.k_ = k / g;
    if (e.k_ == 0) e.n_ = 1;
    return e;
}

EigenClass EigenClass::symbolic(int sign, std::vector<int> exponents) {
    while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
    EigenClass e;
    e.backend_ = Backend::Symbolic;
    e.sign_ = sign < 0 ? -1 : 1;
    e.exps_ = std::move(exponents);
    return e;
}

EigenClass EigenClass::generator(int index, int count) {
    if (index < 1 || index > count)
        throw Error(ErrorCode::GeneratorOutOfRange,
                    "x" + std::to_string(index) + " outside 1.." + std::to_string(count));
    std::vector<int> e(index, 0);
    e[index - 1] = 1;
    return symbolic(1, std::move(e));
}

EigenClass EigenClass::one(Backend b) {
    switch (b) {
        case Backend::Rational: return rational(1);
        case Backend::RootOfUnity: return root_of_unity(1, 0);
        case Backend::Symbolic: return symbolic(1, {});
    }
    return rational(1);
}

EigenClass EigenClass::minus_one(Backend b) {
    switch (b) {
        case Backend::Rational: return rational(-1);
        case Backend::RootOfUnity: return root_of_unity(2, 1);
        case Backend::Symbolic: return symbolic(-1, {});
    }
    return rational(-1);
}

bool operator==(const EigenClass& a, const EigenClass& b) {
    if (a.backend_ != b.backend_) return false;
    switch (a.backend_) {
        case Backend::Rational: return a.rat_ == b.rat_;
        case Backend::RootOfUnity: return a.n_ == b.n_ && a.k_ == b.k_;
        case Backend::Symbolic: return a.sign_ == b.sign_ && compare_exps(a.exps_, b.exps_) == 0;
    }
    return false;
}

bool operator<(const EigenClass& a, const EigenClass& b) {
    if (a.backend_ != b.backend_) return a.backend_ < b.backend_;
    switch (a.backend_) {
        case Backend::Rational: {
            int c = cmp(a.rat_.get_num(), b.rat_.get_num());
            if (c != 0) return c < 0;
            return a.rat_.get_den() < b.rat_.get_den();
        }
        case Backend::RootOfUnity:
            if (a.n_ != b.n_) return a.n_ < b.n_;
            return a.k_ < b.k_;
        case Backend::Symbolic:
            if (a.sign_ != b.sign_) return a.sign_ > b.sign_;
            return compare_exps(a.exps_, b.exps_) < 0;
    }
    return false;
}

EigenClass eigen_mul(const EigenClass& a, const EigenClass& b) {
    require_same_backend(a, b);
    switch (a.backend()) {
        case Backend::Rational: return EigenClass::rational(a.rational_value() * b.rational_value());
        case Backend::RootOfUnity: {
            long n = std::lcm(a.order(), b.order());
            long k = (a.exponent() * (n / a.order()) + b.exponent() * (n / b.order())) % n;
            return EigenClass::root_of_unity(n, k);
        }
        case Backend::Symbolic: {
            std::size_t len = std::max(a.exponents().size(), b.exponents().size());
            std::vector<int> e(len);
            for (std::size_t i = 0; i < len; ++i) e[i] = padded(a.exponents(), i) + padded(b.exponents(), i);
            return EigenClass::symbolic(a.sign() * b.sign(), std::move(e));
        }
    }
    return a;
}

EigenClass eigen_inv(const EigenClass& a) {
    switch (a.backend()) {
        case Backend::Rational: return EigenClass::rational(1 / a.rational_value());
        case Backend::RootOfUnity: return EigenClass::root_of_unity(a.order(), a.order() - a.exponent());
        case Backend::Symbolic: {
            std::vector<int> e = a.exponents();
            for (auto& x : e) x = -x;
            return EigenClass::symbolic(a.sign(), std::move(e));
        }
    }
    return a;
}

EigenClass eigen_neg(const EigenClass& a) { return eigen_mul(EigenClass::minus_one(a.backend()), a); }

UnitKind classify_unit(const EigenClass& a) {
    if (a == EigenClass::one(a.backend())) return UnitKind::IsOne;
    if (a == EigenClass::minus_one(a.backend())) return UnitKind::IsMinusOne;
    return UnitKind::Generic;
}

TraceOrbit orbit_of(const EigenClass& a) {
    if (classify_unit(a) != UnitKind::Generic)
        throw Error(ErrorCode::NotAnOrbit, to_string(a) + " is +-1 and indexes no skyscraper");
    EigenClass inv = eigen_inv(a);
    return TraceOrbit(inv < a ? inv : a);
}

std::string to_string(const EigenClass& a) {
    std::ostringstream os;
    switch (a.backend()) {
        case Backend::Rational: os << "rat:" << a.rational_value().get_str(); break;
        case Backend::RootOfUnity: os << "zeta:" << a.order() << ":" << a.exponent(); break;
        case Backend::Symbolic: {
            os << "sym:";
            if (a.sign() < 0) os << "-";
            bool any = false;
            for (std::size_t i = 0; i < a.exponents().size(); ++i) {
                int e = a.exponents()[i];
                if (e == 0) continue;
                if (any) os << "*";
                any = true;
                os << "x" << i + 1;
                if (e != 1) os << "^" << e;
            }
            if (!any) os << "1";
            break;
        }
    }
    return os.str();
}

namespace {

long parse_long(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != s.size() || s.empty()) throw Error(ErrorCode::ParseError, "bad integer in eigenvalue '" + whole + "'");
    return v;
}

}  // namespace

EigenClass parse_eigen(const std::string& text, int symbolic_count) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "expected backend prefix in '" + text + "'");
    std::string tag = text.substr(0, colon), body = text.substr(colon + 1);
    if (tag == "rat") {
        mpq_class v;
        if (body.empty() || v.set_str(body, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational '" + text + "'");
        if (v.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
        v.canonicalize();
        return EigenClass::rational(v);
    }
    if (tag == "zeta") {
        auto c2 = body.find(':');
        if (c2 == std::string::npos) throw Error(ErrorCode::ParseError, "expected zeta:n:k, got '" + text + "'");
        return EigenClass::root_of_unity(parse_long(body.substr(0, c2), text), parse_long(body.substr(c2 + 1), text));
    }
    if (tag == "sym") {
        int sign = 1;
        if (!body.empty() && body[0] == '-') {
            sign = -1;
            body = body.substr(1);
        }
        if (body == "1") return EigenClass::symbolic(sign, {});
        std::vector<int> exps;
        std::stringstream ss(body);
        std::string factor;
        while (std::getline(ss, factor, '*')) {
            if (factor.size() < 2 || factor[0] != 'x') throw Error(ErrorCode::ParseError, "bad symbolic factor in '" + text + "'");
            auto caret = factor.find('^');
            long idx = parse_long(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1), text);
            long e = caret == std::string::npos ? 1 : parse_long(factor.substr(caret + 1), text);
            if (idx < 1 || (symbolic_count >= 0 && idx > symbolic_count))
                throw Error(ErrorCode::GeneratorOutOfRange, "generator x" + std::to_string(idx) + " out of range");
            if (exps.size() < static_cast<std::size_t>(idx)) exps.resize(idx, 0);
            exps[idx - 1] += static_cast<int>(e);
        }
        return EigenClass::symbolic(sign, std::move(exps));
    }
    throw Error(ErrorCode::ParseError, "unknown eigenvalue backend '" + tag + "'");
}

}  // namespace pcv
