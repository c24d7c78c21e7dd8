#pragma once

// Point counting in SL(2, F_p): the independent oracle.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pcv/errors.hpp"

namespace pcv {

struct Sl2Elem {
    int a = 1, b = 0, c = 0, d = 1;
    friend bool operator==(const Sl2Elem& x, const Sl2Elem& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

enum class ProfileTag { Id, MinusId, JPlus, JMinus, Theta };

struct ClassProfile {
    ProfileTag tag = ProfileTag::Id;
    int trace = 0;  // meaningful for Theta only
    friend bool operator==(const ClassProfile& x, const ClassProfile& y) {
        return x.tag == y.tag && (x.tag != ProfileTag::Theta || x.trace == y.trace);
    }
};

constexpr int kMaxPrime = 113;
constexpr std::int64_t kDefaultWorkLimit = 1000000000;

// SL2(F_p) with its p+4 conjugacy classes. Class keys: 0 = Id, 1 = -Id, 2,3 = the two
// unipotent classes, 4,5 = their negatives, 6.. = one class per trace t != ±2.
class GroupData {
public:
    explicit GroupData(int p);

    int p() const { return p_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
    const std::vector<Sl2Elem>& elements() const { return elements_; }

    int mod(long x) const {
        long r = x % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }
    int inverse(int x) const { return inv_[mod(x)]; }
    // Legendre symbol, chi(0) = 0
    int chi(long x) const { return chi_[mod(x)]; }

    Sl2Elem mul(const Sl2Elem& x, const Sl2Elem& y) const {
        return {(x.a * y.a + x.b * y.c) % p_, (x.a * y.b + x.b * y.d) % p_, (x.c * y.a + x.d * y.c) % p_,
                (x.c * y.b + x.d * y.d) % p_};
    }
    Sl2Elem inv(const Sl2Elem& x) const { return {x.d, mod(-x.b), mod(-x.c), x.a}; }
    Sl2Elem neg(const Sl2Elem& x) const { return {mod(-x.a), mod(-x.b), mod(-x.c), mod(-x.d)}; }
    int trace(const Sl2Elem& x) const { return (x.a + x.d) % p_; }

    int class_count() const { return p_ + 4; }
    int class_key(const Sl2Elem& x) const;
    ClassProfile profile(const Sl2Elem& x) const;
    ClassProfile class_profile(int key) const;
    const Sl2Elem& class_rep(int key) const { return reps_[key]; }
    std::int64_t class_size(int key) const { return sizes_[key]; }
    std::int64_t centralizer_order(int key) const { return order() / sizes_[key]; }
    // regular semisimple traces, ascending
    const std::vector<int>& theta_traces() const { return theta_traces_; }
    int theta_key(int trace) const;
    bool is_split(int trace) const { return chi(static_cast<long>(trace) * trace - 4) == 1; }
    std::vector<Sl2Elem> members(const ClassProfile& prof) const;

private:
    int p_;
    std::vector<int> inv_, chi_, trace_index_;
    std::vector<Sl2Elem> elements_, reps_;
    std::vector<std::int64_t> sizes_;
    std::vector<int> theta_traces_;
};

bool is_prime(int n);

// Surface data with residue traces for the semisimple punctures.
struct ResidueSurface {
    int genus = 0;
    int r_plus = 0;
    int r_minus = 0;
    int minus_id = 0;
    std::vector<int> traces;
};

std::vector<ClassProfile> puncture_profiles(const ResidueSurface& s);

// Direct enumeration; the last puncture is eliminated by a membership test.
mpz_class count_representation_points(const GroupData& G, const ResidueSurface& s,
                                      std::int64_t work_limit = kDefaultWorkLimit);
std::int64_t direct_count_work(const GroupData& G, const ResidueSurface& s);
// Same count via convolution of class functions; cost O(classes * |G|) per factor.
mpz_class count_representation_points_convolution(const GroupData& G, const ResidueSurface& s);
// Tuples satisfying the relation whose matrices share an eigenline of the first semisimple
// puncture matrix (which must have a split trace).
mpz_class count_reducible_points(const GroupData& G, const ResidueSurface& s,
                                 std::int64_t work_limit = kDefaultWorkLimit);

// #{(g1, g2) : [g1, g2] = x} at every class representative.
std::vector<std::int64_t> commutator_counts(const GroupData& G);

enum class FiberKind { Handle, JordanPlus, JordanMinus, Semisimple };

// Input weight on g. The first eight match the core generators in order; Sky is the
// indicator of the fixed split trace sky_trace.
enum class InputWeight { Id, MinusId, JPlus, JMinus, Theta, ChiMinus2, ChiPlus2, ChiDisc, Sky };

struct FiberRequest {
    FiberKind kind = FiberKind::Handle;
    int kernel_trace = 0;  // Semisimple only
    InputWeight weight = InputWeight::Id;
    int sky_trace = 0;  // Sky only
};

// Weighted counts per output stratum (free h factor dropped). Theta counts are per trace.
struct FiberCounts {
    std::int64_t id = 0, minus_id = 0, jplus = 0, jminus = 0;
    std::map<int, std::int64_t> theta;
};

std::vector<FiberCounts> fiber_counts(const GroupData& G, FiberKind kind, int kernel_trace,
                                      const std::vector<std::pair<InputWeight, int>>& weights);

// Theta part resolved against {1, chi(t-2), chi(t+2), chi(t^2-4)}; traces listed in
// `excluded` are skipped by the solve and their excess is reported as skyscraper mass.
struct ProfileDecomposition {
    std::array<mpz_class, 4> coeffs;
    std::map<int, mpz_class> sky_excess;
};

ProfileDecomposition resolve_profiles(const GroupData& G, const std::map<int, std::int64_t>& theta,
                                      const std::vector<int>& excluded);

// Eight core coordinates (T2, Tm2, Tp, Tm, TTheta, S2, Sm2, S2Sm2) plus skyscraper excess.
struct FiberProfile {
    std::array<mpz_class, 8> core;
    std::map<int, mpz_class> sky_excess;
};

FiberProfile fiber_profile_counts(const GroupData& G, const FiberRequest& req,
                                  const std::vector<int>& excluded_traces = {});

}  // namespace pcv
