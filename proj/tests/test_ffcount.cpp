#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pcv/ffcount.hpp"

using namespace pcv;

namespace {
// Brute force over all pairs for the once-punctured torus with holonomy in the given class.
mpz_class brute_torus(const GroupData& G, int trace) {
    mpz_class n = 0;
    const int p = G.p();
    for (const auto& a : G.elements())
        for (const auto& b : G.elements()) {
            // tr(a b a^-1 b^-1)
            Sl2Elem ai{a.d, (p - a.b) % p, (p - a.c) % p, a.a}, bi{b.d, (p - b.b) % p, (p - b.c) % p, b.a};
            Sl2Elem c = G.mul(G.mul(a, b), G.mul(ai, bi));
            if (G.trace(c) == trace) ++n;
        }
    return n;
}
}  // namespace

TEST_CASE("group data") {
    GroupData G(5);
    CHECK(G.order() == 120);
    CHECK(G.class_count() == 9);
    std::int64_t total = 0;
    for (int k = 0; k < G.class_count(); ++k) total += G.class_size(k);
    CHECK(total == 120);
    CHECK(G.chi(4) == 1);
    CHECK(G.chi(2) == -1);
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(113));
}

TEST_CASE("prime limits") {
    CHECK_THROWS_WITH_AS(GroupData(9), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_WITH_AS(GroupData(127), doctest::Contains("PrimeTooLarge"), Error);
}

TEST_CASE("commutator counts sum to |G|^2") {
    GroupData G(7);
    auto counts = commutator_counts(G);
    std::int64_t total = 0;
    for (int k = 0; k < G.class_count(); ++k) total += counts[k] * G.class_size(k);
    CHECK(total == G.order() * G.order());
}

TEST_CASE("closed torus and genus two") {
    CHECK(count_representation_points(GroupData(3), {1, 0, 0, 0, {}}) == 168);
    CHECK(count_representation_points(GroupData(5), {1, 0, 0, 0, {}}) == 1080);
    CHECK(count_representation_points_convolution(GroupData(3), {2, 0, 0, 0, {}}) == 53376);
}

TEST_CASE("direct enumeration, convolution and brute force agree") {
    GroupData G(5);
    for (int t : {0, 1, 4}) {
        ResidueSurface s{1, 0, 0, 0, {t}};
        mpz_class direct = count_representation_points(G, s), conv = count_representation_points_convolution(G, s);
        CHECK(direct == conv);
        CHECK(direct == brute_torus(G, t));
    }
    for (const ResidueSurface& s : {ResidueSurface{1, 1, 0, 0, {}}, ResidueSurface{0, 1, 1, 1, {1}},
                                    ResidueSurface{1, 0, 0, 1, {}}, ResidueSurface{0, 0, 0, 0, {1, 4, 0}}})
        CHECK(count_representation_points(G, s) == count_representation_points_convolution(G, s));
}

TEST_CASE("work limit") {
    CHECK_THROWS_WITH_AS(count_representation_points(GroupData(7), {2, 0, 0, 0, {}}, 1000),
                         doctest::Contains("WorkLimitExceeded"), Error);
}

TEST_CASE("reducible locus") {
    // eigenvalue 2 at p = 5 for both punctures: every reducible tuple has a common eigenline
    GroupData G(5);
    ResidueSurface s{1, 0, 0, 0, {0, 0}};
    CHECK(count_reducible_points(G, s) > 0);
    CHECK(count_reducible_points(G, s) <= count_representation_points_convolution(G, s));
}

TEST_CASE("fiber profile decomposition") {
    GroupData G(13);
    FiberProfile f = fiber_profile_counts(G, {FiberKind::JordanPlus, 0, InputWeight::Id, 0});
    // Z(L_[J+]) applied to T2 lands entirely on the [J+] stratum
    CHECK(f.core[2] != 0);
    CHECK(f.core[0] == 0);
    CHECK(f.sky_excess.empty());
}
