#include "pcv/ffcount.hpp"

#include <functional>
#include <string>

namespace pcv {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

GroupData::GroupData(int p) : p_(p) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
    if (p > kMaxPrime) throw Error(ErrorCode::PrimeTooLarge, std::to_string(p) + " exceeds " + std::to_string(kMaxPrime));

    inv_.assign(p, 0);
    chi_.assign(p, -1);
    chi_[0] = 0;
    for (int x = 1; x < p; ++x) {
        chi_[x * x % p] = 1;
        for (int y = 1; y < p; ++y)
            if (x * y % p == 1) inv_[x] = y;
    }

    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c) {
                if (a != 0) {
                    elements_.push_back({a, b, c, (1 + b * c) % p * inv_[a] % p});
                } else if (b != 0 && mod(static_cast<long>(b) * c) == p - 1) {
                    for (int d = 0; d < p; ++d) elements_.push_back({a, b, c, d});
                }
            }

    trace_index_.assign(p, -1);
    for (int t = 0; t < p; ++t)
        if (t != 2 && t != p - 2) {
            trace_index_[t] = static_cast<int>(theta_traces_.size());
            theta_traces_.push_back(t);
        }

    int nonresidue = 2;
    while (chi_[nonresidue] != -1) ++nonresidue;
    reps_.push_back({1, 0, 0, 1});
    reps_.push_back({p - 1, 0, 0, p - 1});
    reps_.push_back({1, 1, 0, 1});
    reps_.push_back({1, nonresidue, 0, 1});
    reps_.push_back(neg(reps_[2]));
    reps_.push_back(neg(reps_[3]));
    for (int t : theta_traces_) reps_.push_back({0, p - 1, 1, t});

    sizes_.assign(class_count(), 0);
    for (const auto& x : elements_) ++sizes_[class_key(x)];
}

int GroupData::theta_key(int trace) const {
    int idx = trace_index_[mod(trace)];
    if (idx < 0) throw Error(ErrorCode::InvalidSpec, "trace " + std::to_string(trace) + " is +-2 mod p");
    return 6 + idx;
}

int GroupData::class_key(const Sl2Elem& x) const {
    int t = trace(x);
    if (t == 2 % p_ || t == p_ - 2) {
        bool minus = t == p_ - 2;
        Sl2Elem u = minus ? neg(x) : x;
        if (u.b == 0 && u.c == 0) return minus ? 1 : 0;
        int s = u.b != 0 ? chi_[u.b] : chi(-u.c);
        return (minus ? 4 : 2) + (s == 1 ? 0 : 1);
    }
    return 6 + trace_index_[t];
}

ClassProfile GroupData::class_profile(int key) const {
    if (key == 0) return {ProfileTag::Id, 0};
    if (key == 1) return {ProfileTag::MinusId, 0};
    if (key <= 3) return {ProfileTag::JPlus, 0};
    if (key <= 5) return {ProfileTag::JMinus, 0};
    return {ProfileTag::Theta, theta_traces_[key - 6]};
}

ClassProfile GroupData::profile(const Sl2Elem& x) const { return class_profile(class_key(x)); }

std::vector<Sl2Elem> GroupData::members(const ClassProfile& prof) const {
    std::vector<Sl2Elem> out;
    for (const auto& x : elements_)
        if (profile(x) == prof) out.push_back(x);
    return out;
}

std::vector<ClassProfile> puncture_profiles(const ResidueSurface& s) {
    std::vector<ClassProfile> out;
    for (int i = 0; i < s.r_plus; ++i) out.push_back({ProfileTag::JPlus, 0});
    for (int i = 0; i < s.r_minus; ++i) out.push_back({ProfileTag::JMinus, 0});
    for (int i = 0; i < s.minus_id; ++i) out.push_back({ProfileTag::MinusId, 0});
    for (int t : s.traces) out.push_back({ProfileTag::Theta, t});
    return out;
}

namespace {

std::vector<ClassProfile> normalized_punctures(const GroupData& G, const ResidueSurface& s) {
    if (s.genus < 0 || s.r_plus < 0 || s.r_minus < 0 || s.minus_id < 0)
        throw Error(ErrorCode::InvalidSpec, "negative surface data");
    auto profs = puncture_profiles(s);
    for (auto& pr : profs)
        if (pr.tag == ProfileTag::Theta) {
            pr.trace = G.mod(pr.trace);
            G.theta_key(pr.trace);
        }
    return profs;
}

struct Enumerator {
    const GroupData& G;
    int genus;
    std::vector<std::vector<Sl2Elem>> sets;  // all punctures but the last
    std::optional<ClassProfile> last;
    std::function<bool(const std::vector<Sl2Elem>&)> accept;  // optional extra predicate

    mpz_class run() {
        std::vector<Sl2Elem> tuple;
        mpz_class total = 0;
        std::int64_t local = 0;
        walk(0, Sl2Elem{}, tuple, local);
        total += local;
        return total;
    }

    void walk(int depth, const Sl2Elem& prod, std::vector<Sl2Elem>& tuple, std::int64_t& count) {
        int pair_depth = 2 * genus;
        if (depth < pair_depth) {
            if (depth % 2 == 0) {
                for (const auto& A : G.elements()) {
                    tuple.push_back(A);
                    walk(depth + 1, prod, tuple, count);
                    tuple.pop_back();
                }
            } else {
                const Sl2Elem A = tuple.back();
                Sl2Elem Ai = G.inv(A);
                for (const auto& B : G.elements()) {
                    Sl2Elem comm = G.mul(G.mul(A, B), G.mul(Ai, G.inv(B)));
                    tuple.push_back(B);
                    walk(depth + 1, G.mul(prod, comm), tuple, count);
                    tuple.pop_back();
                }
            }
            return;
        }
        int k = depth - pair_depth;
        if (k < static_cast<int>(sets.size())) {
            for (const auto& C : sets[k]) {
                tuple.push_back(C);
                walk(depth + 1, G.mul(prod, C), tuple, count);
                tuple.pop_back();
            }
            return;
        }
        if (!last) {
            if (prod == Sl2Elem{} && (!accept || accept(tuple))) ++count;
            return;
        }
        Sl2Elem C = G.inv(prod);
        if (!(G.profile(C) == *last)) return;
        if (accept) {
            tuple.push_back(C);
            bool ok = accept(tuple);
            tuple.pop_back();
            if (!ok) return;
        }
        ++count;
    }
};

Enumerator make_enumerator(const GroupData& G, const ResidueSurface& s, std::int64_t work_limit) {
    auto profs = normalized_punctures(G, s);
    std::int64_t work = direct_count_work(G, s);
    if (work < 0 || work > work_limit)
        throw Error(ErrorCode::WorkLimitExceeded,
                    "direct enumeration needs more than " + std::to_string(work_limit) + " steps");
    Enumerator e{G, s.genus, {}, std::nullopt, {}};
    if (!profs.empty()) {
        e.last = profs.back();
        profs.pop_back();
    }
    for (const auto& pr : profs) e.sets.push_back(G.members(pr));
    return e;
}

}  // namespace

std::int64_t direct_count_work(const GroupData& G, const ResidueSurface& s) {
    auto profs = normalized_punctures(G, s);
    long double work = 1;
    for (int i = 0; i < 2 * s.genus; ++i) work *= static_cast<long double>(G.order());
    for (std::size_t i = 0; i + 1 < profs.size(); ++i) {
        std::int64_t size = 0;
        switch (profs[i].tag) {
            case ProfileTag::Id:
            case ProfileTag::MinusId: size = 1; break;
            case ProfileTag::JPlus: size = G.class_size(2) + G.class_size(3); break;
            case ProfileTag::JMinus: size = G.class_size(4) + G.class_size(5); break;
            case ProfileTag::Theta: size = G.class_size(G.theta_key(profs[i].trace)); break;
        }
        work *= static_cast<long double>(size);
    }
    if (work > 4e18L) return -1;
    return static_cast<std::int64_t>(work);
}

mpz_class count_representation_points(const GroupData& G, const ResidueSurface& s, std::int64_t work_limit) {
    return make_enumerator(G, s, work_limit).run();
}

mpz_class count_reducible_points(const GroupData& G, const ResidueSurface& s, std::int64_t work_limit) {
    if (s.traces.empty()) throw Error(ErrorCode::InvalidSpec, "reducible count needs a semisimple puncture");
    int t0 = G.mod(s.traces.front());
    if (!G.is_split(t0)) throw Error(ErrorCode::InvalidSpec, "first semisimple trace must be split over F_p");
    Enumerator e = make_enumerator(G, s, work_limit);
    // position of the first semisimple matrix inside the tuple
    std::size_t pos = 2 * s.genus + s.r_plus + s.r_minus + s.minus_id;
    int p = G.p();
    e.accept = [&G, pos, p](const std::vector<Sl2Elem>& tuple) {
        const Sl2Elem& C = tuple[pos];
        int t = G.trace(C);
        for (int lam = 1; lam < p; ++lam) {
            if ((lam + G.inverse(lam)) % p != t) continue;
            long vx = C.b, vy = G.mod(lam - C.a);
            if (vx == 0 && vy == 0) {
                vx = G.mod(lam - C.d);
                vy = C.c;
            }
            bool all = true;
            for (const auto& M : tuple) {
                long wx = M.a * vx + M.b * vy, wy = M.c * vx + M.d * vy;
                if (G.mod(vx * wy - vy * wx) != 0) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    };
    return e.run();
}

std::vector<std::int64_t> commutator_counts(const GroupData& G) {
    std::vector<std::int64_t> out(G.class_count(), 0);
    for (int key = 0; key < G.class_count(); ++key) {
        const Sl2Elem& x = G.class_rep(key);
        std::int64_t n = 0;
        for (const auto& g1 : G.elements()) {
            Sl2Elem g1i = G.inv(g1);
            int k1 = G.class_key(g1i);
            if (G.class_key(G.mul(g1i, x)) == k1) n += G.centralizer_order(k1);
        }
        out[key] = n;
    }
    return out;
}

namespace {

// f * k evaluated at every class representative, both given as class functions.
std::vector<mpz_class> convolve(const GroupData& G, const std::vector<mpz_class>& f,
                                const std::vector<std::pair<Sl2Elem, mpz_class>>& kernel) {
    std::vector<mpz_class> out(G.class_count(), 0);
    for (int key = 0; key < G.class_count(); ++key) {
        const Sl2Elem& x = G.class_rep(key);
        mpz_class acc = 0;
        for (const auto& [y, k] : kernel) {
            const mpz_class& fv = f[G.class_key(G.mul(x, G.inv(y)))];
            if (fv != 0) acc += fv * k;
        }
        out[key] = acc;
    }
    return out;
}

}  // namespace

mpz_class count_representation_points_convolution(const GroupData& G, const ResidueSurface& s) {
    auto profs = normalized_punctures(G, s);
    std::vector<mpz_class> f(G.class_count(), 0);
    f[0] = 1;
    if (s.genus > 0) {
        auto N = commutator_counts(G);
        std::vector<std::pair<Sl2Elem, mpz_class>> kernel;
        kernel.reserve(G.elements().size());
        for (const auto& y : G.elements()) {
            std::int64_t n = N[G.class_key(y)];
            if (n != 0) kernel.emplace_back(y, mpz_class(static_cast<long>(n)));
        }
        for (int i = 0; i < s.genus; ++i) f = convolve(G, f, kernel);
    }
    for (const auto& pr : profs) {
        std::vector<std::pair<Sl2Elem, mpz_class>> kernel;
        for (const auto& y : G.members(pr)) kernel.emplace_back(y, mpz_class(1));
        f = convolve(G, f, kernel);
    }
    return f[0];
}

namespace {

std::vector<int> weight_vector(const GroupData& G, InputWeight w, int sky_trace) {
    std::vector<int> v(G.class_count(), 0);
    for (int key = 0; key < G.class_count(); ++key) {
        ClassProfile pr = G.class_profile(key);
        long t = pr.trace;
        switch (w) {
            case InputWeight::Id: v[key] = pr.tag == ProfileTag::Id; break;
            case InputWeight::MinusId: v[key] = pr.tag == ProfileTag::MinusId; break;
            case InputWeight::JPlus: v[key] = pr.tag == ProfileTag::JPlus; break;
            case InputWeight::JMinus: v[key] = pr.tag == ProfileTag::JMinus; break;
            case InputWeight::Theta: v[key] = pr.tag == ProfileTag::Theta; break;
            case InputWeight::ChiMinus2: v[key] = pr.tag == ProfileTag::Theta ? G.chi(t - 2) : 0; break;
            case InputWeight::ChiPlus2: v[key] = pr.tag == ProfileTag::Theta ? G.chi(t + 2) : 0; break;
            case InputWeight::ChiDisc: v[key] = pr.tag == ProfileTag::Theta ? G.chi(t * t - 4) : 0; break;
            case InputWeight::Sky: v[key] = pr.tag == ProfileTag::Theta && pr.trace == G.mod(sky_trace); break;
        }
    }
    return v;
}

}  // namespace

std::vector<FiberCounts> fiber_counts(const GroupData& G, FiberKind kind, int kernel_trace,
                                      const std::vector<std::pair<InputWeight, int>>& weights) {
    // kernel k(y): the span sends g to class(g y) with multiplicity k(y)
    std::vector<std::pair<Sl2Elem, std::int64_t>> kernel;
    if (kind == FiberKind::Handle) {
        auto N = commutator_counts(G);
        for (const auto& y : G.elements()) kernel.emplace_back(y, N[G.class_key(y)]);
    } else {
        ClassProfile pr{ProfileTag::JPlus, 0};
        if (kind == FiberKind::JordanMinus) pr = {ProfileTag::JMinus, 0};
        if (kind == FiberKind::Semisimple) {
            pr = {ProfileTag::Theta, G.mod(kernel_trace)};
            G.theta_key(pr.trace);
        }
        for (const auto& y : G.members(pr)) kernel.emplace_back(y, 1);
    }

    // H[z][key] = sum_y k(y) [class(z y^-1) = key]
    int nc = G.class_count();
    std::vector<std::vector<std::int64_t>> H(nc, std::vector<std::int64_t>(nc, 0));
    for (int z = 0; z < nc; ++z) {
        const Sl2Elem& x = G.class_rep(z);
        for (const auto& [y, k] : kernel)
            if (k != 0) H[z][G.class_key(G.mul(x, G.inv(y)))] += k;
    }

    std::vector<FiberCounts> out;
    for (const auto& [w, sky] : weights) {
        auto wv = weight_vector(G, w, sky);
        FiberCounts fc;
        for (int z = 0; z < nc; ++z) {
            std::int64_t val = 0;
            for (int key = 0; key < nc; ++key) val += H[z][key] * wv[key];
            std::int64_t mass = val * G.class_size(z);
            ClassProfile pr = G.class_profile(z);
            switch (pr.tag) {
                case ProfileTag::Id: fc.id += mass; break;
                case ProfileTag::MinusId: fc.minus_id += mass; break;
                case ProfileTag::JPlus: fc.jplus += mass; break;
                case ProfileTag::JMinus: fc.jminus += mass; break;
                case ProfileTag::Theta: fc.theta[pr.trace] += mass; break;
            }
        }
        out.push_back(std::move(fc));
    }
    return out;
}

ProfileDecomposition resolve_profiles(const GroupData& G, const std::map<int, std::int64_t>& theta,
                                      const std::vector<int>& excluded) {
    auto is_excluded = [&](int t) {
        for (int e : excluded)
            if (G.mod(e) == t) return true;
        return false;
    };
    auto row = [&](int t) {
        long tl = t;
        return std::array<int, 4>{1, G.chi(tl - 2), G.chi(tl + 2), G.chi(tl * tl - 4)};
    };
    auto value = [&](int t) -> mpz_class {
        auto it = theta.find(t);
        return it == theta.end() ? mpz_class(0) : mpz_class(static_cast<long>(it->second));
    };

    std::vector<int> usable;
    for (int t : G.theta_traces())
        if (!is_excluded(t)) usable.push_back(t);

    // pick the first trace of each sign pattern (chi(t-2), chi(t+2))
    std::vector<int> sample;
    for (int pattern = 0; pattern < 4; ++pattern) {
        int want_a = pattern & 1 ? -1 : 1, want_b = pattern & 2 ? -1 : 1;
        for (int t : usable) {
            auto r = row(t);
            if (r[1] == want_a && r[2] == want_b) {
                sample.push_back(t);
                break;
            }
        }
    }
    if (sample.size() < 4)
        throw Error(ErrorCode::ProfileSystemSingular,
                    "p = " + std::to_string(G.p()) + " has too few traces to separate the four profiles");

    // Gaussian elimination over Q on the 4x4 system
    std::array<std::array<mpq_class, 5>, 4> m;
    for (int i = 0; i < 4; ++i) {
        auto r = row(sample[i]);
        for (int j = 0; j < 4; ++j) m[i][j] = r[j];
        m[i][4] = value(sample[i]);
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        while (piv < 4 && m[piv][col] == 0) ++piv;
        if (piv == 4) throw Error(ErrorCode::ProfileSystemSingular, "singular profile system");
        std::swap(m[piv], m[col]);
        for (int i = 0; i < 4; ++i) {
            if (i == col || m[i][col] == 0) continue;
            mpq_class f = m[i][col] / m[col][col];
            for (int j = col; j < 5; ++j) m[i][j] -= f * m[col][j];
        }
    }
    ProfileDecomposition out;
    for (int i = 0; i < 4; ++i) {
        mpq_class c = m[i][4] / m[i][i];
        if (c.get_den() != 1)
            throw Error(ErrorCode::ResidualNonzero, "fractional profile coefficient at p = " + std::to_string(G.p()));
        out.coeffs[i] = c.get_num();
    }
    auto predicted = [&](int t) {
        auto r = row(t);
        mpz_class v = 0;
        for (int j = 0; j < 4; ++j) v += out.coeffs[j] * r[j];
        return v;
    };
    for (int t : usable)
        if (predicted(t) != value(t))
            throw Error(ErrorCode::ResidualNonzero,
                        "profile residual at trace " + std::to_string(t) + ", p = " + std::to_string(G.p()));
    for (int e : excluded) {
        int t = G.mod(e);
        mpz_class excess = value(t) - predicted(t);
        if (excess != 0) out.sky_excess[t] += excess;
    }
    return out;
}

FiberProfile fiber_profile_counts(const GroupData& G, const FiberRequest& req, const std::vector<int>& excluded) {
    auto counts = fiber_counts(G, req.kind, req.kernel_trace, {{req.weight, req.sky_trace}});
    const FiberCounts& fc = counts.front();
    ProfileDecomposition dec = resolve_profiles(G, fc.theta, excluded);
    FiberProfile out;
    out.core[0] = static_cast<long>(fc.id);
    out.core[1] = static_cast<long>(fc.minus_id);
    out.core[2] = static_cast<long>(fc.jplus);
    out.core[3] = static_cast<long>(fc.jminus);
    for (int i = 0; i < 4; ++i) out.core[4 + i] = dec.coeffs[i];
    out.sky_excess = dec.sky_excess;
    return out;
}

}  // namespace pcv
