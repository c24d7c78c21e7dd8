#include "pcv/interpolate.hpp"

#include <cstdio>
#include <functional>
#include <future>
#include <set>
#include <sstream>

namespace pcv {

const char* tube_kind_name(TubeKind k) {
    switch (k) {
        case TubeKind::Handle: return "Handle";
        case TubeKind::JordanPlus: return "JordanPlus";
        case TubeKind::JordanMinus: return "JordanMinus";
        case TubeKind::Semisimple: return "Semisimple";
    }
    return "?";
}

std::optional<TubeKind> parse_tube_kind(const std::string& name) {
    for (TubeKind k : {TubeKind::Handle, TubeKind::JordanPlus, TubeKind::JordanMinus, TubeKind::Semisimple})
        if (name == tube_kind_name(k)) return k;
    return std::nullopt;
}

// dim G^3 and dim G x [J] of the span without its free h factor
int default_degree_bound(TubeKind kind) { return kind == TubeKind::Handle ? 9 : 5; }

std::vector<int> default_fit_primes(TubeKind kind) {
    if (kind == TubeKind::Handle) return {13, 17, 29, 37, 41, 53, 61, 73, 89, 97};
    return {13, 17, 29, 37, 41, 53};
}

std::vector<int> default_held_out_primes(TubeKind kind) {
    if (kind == TubeKind::Handle) return {101, 109};
    return {61, 73};
}

RatPoly lagrange_interpolate(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
    // Newton divided differences, then expansion into the monomial basis
    std::size_t n = xs.size();
    std::vector<mpq_class> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - level]);
            if (i == level) break;
        }
    RatPoly result;
    for (std::size_t i = n; i-- > 0;) {
        result = result * RatPoly(std::vector<mpq_class>{mpq_class(-xs[i]), mpq_class(1)}) + RatPoly(dd[i]);
    }
    return result;
}

IntPoly interpolate_integral(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys, int degree_bound) {
    RatPoly r = lagrange_interpolate(xs, ys);
    if (r.degree() > degree_bound)
        throw Error(ErrorCode::NonIntegralFit, "interpolant degree " + std::to_string(r.degree()) + " exceeds bound " +
                                                   std::to_string(degree_bound));
    std::vector<mpz_class> c;
    for (const auto& x : r.coeffs()) {
        if (x.get_den() != 1) throw Error(ErrorCode::NonIntegralFit, "fractional interpolated coefficient " + x.get_str());
        c.push_back(x.get_num());
    }
    return IntPoly(std::move(c));
}

namespace {

using Sampler = std::function<std::vector<mpz_class>(int)>;

void check_prime_set(const std::vector<int>& primes, const std::vector<int>& held_out, int degree_bound) {
    std::set<int> seen;
    for (int p : primes) seen.insert(p);
    for (int p : held_out) seen.insert(p);
    if (seen.size() != primes.size() + held_out.size())
        throw Error(ErrorCode::ValidationFailed, "fitting and held-out primes must be pairwise distinct");
    for (int p : seen) {
        if (!is_prime(p) || p < 5) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime >= 5");
        if (p > kMaxPrime) throw Error(ErrorCode::PrimeTooLarge, std::to_string(p) + " exceeds " + std::to_string(kMaxPrime));
        // The double covers w^2 = t -+ 2 only match their complex counterparts when -1 is a square.
        if (p % 4 != 1)
            throw Error(ErrorCode::ValidationFailed, "prime " + std::to_string(p) + " is not 1 mod 4");
    }
    if (static_cast<int>(primes.size()) < degree_bound + 1)
        throw Error(ErrorCode::ValidationFailed, "degree bound " + std::to_string(degree_bound) + " needs at least " +
                                                     std::to_string(degree_bound + 1) + " fitting primes, got " +
                                                     std::to_string(primes.size()));
}

std::vector<std::vector<mpz_class>> sample_all(const std::vector<int>& primes, const Sampler& sample) {
    std::vector<std::future<std::vector<mpz_class>>> jobs;
    for (int p : primes) jobs.push_back(std::async(std::launch::async, sample, p));
    std::vector<std::vector<mpz_class>> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::vector<IntPoly> fit_entries(const std::vector<int>& primes, const std::vector<int>& held_out, int degree_bound,
                                 const Sampler& sample) {
    check_prime_set(primes, held_out, degree_bound);
    auto values = sample_all(primes, sample);
    std::vector<mpz_class> xs;
    for (int p : primes) xs.emplace_back(p);
    std::size_t n = values.front().size();
    std::vector<IntPoly> fitted;
    for (std::size_t e = 0; e < n; ++e) {
        std::vector<mpz_class> ys;
        for (const auto& v : values) ys.push_back(v[e]);
        fitted.push_back(interpolate_integral(xs, ys, degree_bound));
    }
    if (!held_out.empty()) {
        auto check = sample_all(held_out, sample);
        for (std::size_t i = 0; i < held_out.size(); ++i)
            for (std::size_t e = 0; e < n; ++e)
                if (fitted[e].evaluate(mpz_class(held_out[i])) != check[i][e])
                    throw Error(ErrorCode::ValidationFailed,
                                "entry " + std::to_string(e) + " mismatches at held-out prime " + std::to_string(held_out[i]));
    }
    return fitted;
}

FiberKind fiber_kind(TubeKind kind) {
    switch (kind) {
        case TubeKind::Handle: return FiberKind::Handle;
        case TubeKind::JordanPlus: return FiberKind::JordanPlus;
        case TubeKind::JordanMinus: return FiberKind::JordanMinus;
        case TubeKind::Semisimple: return FiberKind::Semisimple;
    }
    return FiberKind::Handle;
}

const std::vector<std::pair<InputWeight, int>>& core_weights() {
    static const std::vector<std::pair<InputWeight, int>> w = {
        {InputWeight::Id, 0},     {InputWeight::MinusId, 0},   {InputWeight::JPlus, 0},    {InputWeight::JMinus, 0},
        {InputWeight::Theta, 0},  {InputWeight::ChiMinus2, 0}, {InputWeight::ChiPlus2, 0}, {InputWeight::ChiDisc, 0}};
    return w;
}

// Columns of core coordinates, optionally with the excess at listed traces appended as extra rows.
std::vector<std::array<mpz_class, 8>> profile_columns(const GroupData& G, const std::vector<FiberCounts>& counts,
                                                      const std::vector<int>& excluded,
                                                      std::vector<std::vector<mpz_class>>* excess) {
    std::vector<std::array<mpz_class, 8>> cols;
    for (const auto& fc : counts) {
        ProfileDecomposition dec = resolve_profiles(G, fc.theta, excluded);
        std::array<mpz_class, 8> col;
        col[0] = static_cast<long>(fc.id);
        col[1] = static_cast<long>(fc.minus_id);
        col[2] = static_cast<long>(fc.jplus);
        col[3] = static_cast<long>(fc.jminus);
        for (int i = 0; i < 4; ++i) col[4 + i] = dec.coeffs[i];
        cols.push_back(col);
        if (excess) {
            std::vector<mpz_class> ex;
            for (int t : excluded) {
                auto it = dec.sky_excess.find(G.mod(t));
                ex.push_back(it == dec.sky_excess.end() ? mpz_class(0) : it->second);
            }
            excess->push_back(ex);
        }
    }
    return cols;
}

}  // namespace

CountMatrix core_counts(int p, TubeKind kind) {
    if (kind == TubeKind::Semisimple) throw Error(ErrorCode::InvalidSpec, "semisimple tubes are fitted in validation mode only");
    GroupData G(p);
    auto counts = fiber_counts(G, fiber_kind(kind), 0, core_weights());
    auto cols = profile_columns(G, counts, {}, nullptr);
    CountMatrix m;
    for (int c = 0; c < 8; ++c)
        for (int r = 0; r < 8; ++r) m[r][c] = cols[c][r];
    return m;
}

FittedOperator fit_core_matrix(TubeKind kind, const std::vector<int>& primes, const std::vector<int>& held_out,
                               int degree_bound) {
    if (kind == TubeKind::Semisimple) throw Error(ErrorCode::InvalidSpec, "use fit_semisimple_columns for semisimple tubes");
    if (degree_bound < 0) degree_bound = default_degree_bound(kind);
    auto sample = [kind](int p) {
        CountMatrix m = core_counts(p, kind);
        std::vector<mpz_class> flat;
        for (const auto& row : m)
            for (const auto& x : row) flat.push_back(x);
        return flat;
    };
    auto fitted = fit_entries(primes, held_out, degree_bound, sample);
    FittedOperator op;
    op.kind = kind;
    op.degree_bound = degree_bound;
    op.primes = primes;
    op.held_out = held_out;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) op.entries[r][c] = fitted[r * 8 + c];
    op.checksum = compute_checksum(op);
    return op;
}

std::string compute_checksum(const FittedOperator& op) {
    std::ostringstream os;
    os << tube_kind_name(op.kind) << '|' << op.degree_bound << '|' << op.prefactor << '|';
    for (int p : op.primes) os << p << ',';
    os << '|';
    for (int p : op.held_out) os << p << ',';
    for (const auto& row : op.entries)
        for (const auto& e : row) {
            os << '[';
            for (const auto& c : e.coeffs()) os << c.get_str() << ',';
            os << ']';
        }
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int split_test_trace(int p) {
    if (!is_prime(p) || p < 5) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime >= 5");
    if ((16 - 1) % p == 0 || (16 + 1) % p == 0)
        throw Error(ErrorCode::ValidationFailed, "eigenvalue 4 has square ±1 mod " + std::to_string(p));
    int inv4 = 1;
    while (4 * inv4 % p != 1) ++inv4;
    return (4 + inv4) % p;
}

std::vector<int> default_validation_primes() { return {29, 37, 41, 53, 61, 73, 89, 97, 113}; }
std::vector<int> default_validation_held_out() { return {101, 109}; }

SemisimpleFit fit_semisimple_columns(const std::vector<int>& primes, const std::vector<int>& held_out, int degree_bound) {
    auto sample = [](int p) {
        GroupData G(p);
        int t0 = split_test_trace(p);
        std::vector<int> excluded = {t0, G.mod(-t0)};
        std::vector<std::vector<mpz_class>> excess;
        auto counts = fiber_counts(G, FiberKind::Semisimple, t0, core_weights());
        auto cols = profile_columns(G, counts, excluded, &excess);
        std::vector<mpz_class> flat;
        for (int r = 0; r < 10; ++r)
            for (int c = 0; c < 8; ++c) flat.push_back(r < 8 ? cols[c][r] : excess[c][r - 8]);
        return flat;
    };
    auto fitted = fit_entries(primes, held_out, degree_bound, sample);
    SemisimpleFit out;
    out.primes = primes;
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 8; ++c) out.rows[r][c] = fitted[r * 8 + c];
    return out;
}

SkyColumnFit fit_sky_column(TubeKind kind, const std::vector<int>& primes, const std::vector<int>& held_out,
                            int degree_bound) {
    if (kind == TubeKind::Semisimple) throw Error(ErrorCode::InvalidSpec, "semisimple skyscraper columns follow the reference rule");
    auto sample = [kind](int p) {
        GroupData G(p);
        int t = split_test_trace(p);
        std::vector<int> excluded = {t, G.mod(-t)};
        std::vector<std::vector<mpz_class>> excess;
        auto counts = fiber_counts(G, fiber_kind(kind), 0, {{InputWeight::Sky, t}});
        auto cols = profile_columns(G, counts, excluded, &excess);
        std::vector<mpz_class> flat(cols[0].begin(), cols[0].end());
        flat.push_back(excess[0][0]);
        flat.push_back(excess[0][1]);
        return flat;
    };
    auto fitted = fit_entries(primes, held_out, degree_bound, sample);
    SkyColumnFit out;
    for (int i = 0; i < 8; ++i) out.core[i] = fitted[i];
    out.same = fitted[8];
    out.negated = fitted[9];
    return out;
}

}  // namespace pcv
