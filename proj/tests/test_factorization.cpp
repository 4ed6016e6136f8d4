#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cycfact/enumeration.hpp"
#include "cycfact/factorization.hpp"

using namespace cycfact;

namespace {

// Independent oracle: count representations of every element with two loops.
bool naive_is_factorization(const ResidueSet& a, const ResidueSet& b) {
    const u32 omega = a.omega();
    std::vector<u32> count(omega, 0);
    for (u32 x : a.elements())
        for (u32 y : b.elements()) ++count[(x + y) % omega];
    for (u32 g = 0; g < omega; ++g)
        if (count[g] != 1) return false;
    return true;
}

ResidueSet random_nonempty(Modulus m, std::mt19937_64& rng) {
    ResidueSet s(m);
    for (u32 g = 0; g < m.value(); ++g)
        if (rng() % 4 == 0) s.insert(g);
    if (s.empty()) s.insert(static_cast<u32>(rng() % m.value()));
    return s;
}

}  // namespace

TEST_CASE("sumset_profile examples") {
    const Modulus m4(4);
    const auto p1 = sumset_profile(ResidueSet::of(m4, {0}), ResidueSet::full(m4));
    CHECK(p1.multiplicity == std::vector<u32>{1, 1, 1, 1});
    const auto p2 = sumset_profile(ResidueSet::of(m4, {0, 1}), ResidueSet::of(m4, {0, 1}));
    CHECK(p2.multiplicity == std::vector<u32>{1, 2, 1, 0});
    const auto p3 = sumset_profile(ResidueSet::of(m4, {0, 2}), ResidueSet::of(m4, {0, 1}));
    CHECK(p3.multiplicity == std::vector<u32>{1, 1, 1, 1});
    u64 total = 0;
    for (u32 v : p2.multiplicity) total += v;
    CHECK(total == 4);
    CHECK_THROWS_AS(sumset_profile(ResidueSet::of(m4, {0}), ResidueSet(m4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sumset_profile(ResidueSet::of(m4, {0}), ResidueSet::of(Modulus(5), {0})),
        std::invalid_argument);
}

TEST_CASE("is_factorization examples") {
    const Modulus m10(10), m4(4), m8(8);
    CHECK(is_factorization(ResidueSet::of(m10, {0, 1, 2, 8, 9}), ResidueSet::of(m10, {0, 5})));
    CHECK(!is_factorization(ResidueSet::of(m4, {0, 1}), ResidueSet::of(m4, {0, 1})));
    CHECK(is_factorization(ResidueSet::of(m8, {0, 1, 4, 5}), ResidueSet::of(m8, {0, 2})));
    // degenerate factors
    CHECK(is_factorization(ResidueSet::full(m4), ResidueSet::of(m4, {0})));
    CHECK(is_factorization(ResidueSet::of(m4, {0}), ResidueSet::full(m4)));
    CHECK(FactorizationWitness::make(ResidueSet::of(m10, {0, 1, 2, 8, 9}),
                                     ResidueSet::of(m10, {0, 5}))
              .has_value());
    CHECK(!FactorizationWitness::make(ResidueSet::of(m4, {0, 1}), ResidueSet::of(m4, {0, 1}))
               .has_value());
}

TEST_CASE("is_factorization agrees with the double-loop oracle on random pairs") {
    std::mt19937_64 rng(2024);
    int factorization_hits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Modulus m(1 + rng() % 64);
        ResidueSet a = random_nonempty(m, rng);
        ResidueSet b = random_nonempty(m, rng);
        if (trial % 10 == 0 && m.value() >= 2) {
            // plant genuine factorizations so the true branch is exercised
            u32 n = 1 + static_cast<u32>(rng() % m.value());
            while (m.value() % n != 0) --n;
            a = ResidueSet(m);
            for (u32 v = 0; v < n; ++v) a.insert(v);
            b = cyclic_subgroup(n, m);
            a = translate(a, static_cast<i64>(rng() % m.value()));
            b = translate(b, static_cast<i64>(rng() % m.value()));
        }
        const bool fast = is_factorization(a, b);
        const bool slow = naive_is_factorization(a, b);
        REQUIRE(fast == slow);
        if (fast) ++factorization_hits;
    }
    CHECK(factorization_hits > 50);
}

TEST_CASE("factorization symmetry and translation invariance") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const Modulus m(2 + rng() % 40);
        const ResidueSet a = random_nonempty(m, rng);
        const ResidueSet b = random_nonempty(m, rng);
        const bool ab = is_factorization(a, b);
        CHECK(ab == is_factorization(b, a));
        const i64 s = static_cast<i64>(rng() % m.value());
        const i64 t = static_cast<i64>(rng() % m.value());
        CHECK(ab == is_factorization(translate(a, s), translate(b, t)));
    }
}

TEST_CASE("is_complete_residue_system") {
    const Modulus m10(10);
    CHECK(is_complete_residue_system(ResidueSet::of(m10, {0, 1, 2, 8, 9}), 5));
    CHECK(!is_complete_residue_system(ResidueSet::of(m10, {0, 1, 2, 6, 8}), 5));
    const Modulus m12(12);
    ResidueSet prefix(m12);
    for (u32 v = 0; v < 6; ++v) prefix.insert(v);
    CHECK(is_complete_residue_system(prefix, 6));
    CHECK_THROWS_AS(is_complete_residue_system(ResidueSet::of(m10, {0, 1}), 5),
                    std::invalid_argument);
    CHECK(is_complete_residue_system(std::vector<i64>{-1, 0, 1}, 3));
    CHECK(!is_complete_residue_system(std::vector<i64>{0, 3, 1}, 3));
}

TEST_CASE("stabilizer examples") {
    const Modulus m4(4), m10(10);
    const auto r1 = stabilizer(ResidueSet::of(m4, {0, 2}));
    CHECK(r1.stabilizer == ResidueSet::of(m4, {0, 2}));
    CHECK(r1.is_periodic);
    CHECK(r1.coset_reps == ResidueSet::of(m4, {0}));
    const auto r2 = stabilizer(ResidueSet::of(m4, {0, 1}));
    CHECK(r2.stabilizer == ResidueSet::of(m4, {0}));
    CHECK(!r2.is_periodic);
    const auto r3 = stabilizer(ResidueSet::of(m10, {0, 1, 5, 6}));
    CHECK(r3.stabilizer == ResidueSet::of(m10, {0, 5}));
    CHECK(r3.is_periodic);
    CHECK(r3.coset_reps == ResidueSet::of(m10, {0, 1}));
}

TEST_CASE("stabilizer output is a subgroup and exact") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const Modulus m(1 + rng() % 60);
        const ResidueSet a = random_nonempty(m, rng);
        const auto rep = stabilizer(a);
        CHECK(is_subgroup(rep.stabilizer));
        for (u32 g = 0; g < m.value(); ++g)
            CHECK(rep.stabilizer.contains(g) == (translate(a, g) == a));
        CHECK(rep.coset_reps.size() * rep.stabilizer.size() == a.size());
        // reps rebuild A as a disjoint union of stabilizer cosets
        ResidueSet rebuilt(m);
        rep.coset_reps.for_each([&](u32 r) {
            const auto coset = rep.stabilizer.rotated(r);
            CHECK(!rebuilt.intersects(coset));
            rebuilt.or_with(coset);
        });
        CHECK(rebuilt == a);
    }
}

TEST_CASE("find_complements examples") {
    const Modulus m4(4);
    ComplementSearchOptions normalized;
    normalized.normalized_only = true;
    const auto c1 = find_complements(ResidueSet::of(m4, {0, 1}), normalized);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0] == ResidueSet::of(m4, {0, 2}));
    const auto c2 = find_complements(ResidueSet::of(m4, {0, 2}), normalized);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0] == ResidueSet::of(m4, {0, 1}));
    CHECK(c2[1] == ResidueSet::of(m4, {0, 3}));
    CHECK(find_complements(ResidueSet::of(m4, {0, 1, 2})).empty());  // 3 does not divide 4
    ComplementSearchOptions tight;
    tight.omega_limit = 3;
    CHECK_THROWS_AS(find_complements(ResidueSet::of(m4, {0, 1}), tight), BoundError);
}

TEST_CASE("find_complements output order and translation classes") {
    const Modulus m6(6);
    const ResidueSet a = ResidueSet::of(m6, {0, 3});
    const auto all = find_complements(a);
    REQUIRE(all.size() == 8);
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
        CHECK(ResidueSet::canonical_less(all[i], all[i + 1]));
    for (const auto& b : all) CHECK(is_factorization(a, b));
    ComplementSearchOptions normalized;
    normalized.normalized_only = true;
    const auto norm = find_complements(a, normalized);
    CHECK(norm.size() == 4);
    for (const auto& b : norm) CHECK(b.contains(0));
    // normalized results are exactly the complements containing 0, and every
    // complement is a translate of a normalized one
    for (const auto& b : all) {
        if (b.contains(0))
            CHECK(std::find(norm.begin(), norm.end(), b) != norm.end());
        const ResidueSet shifted = normalize(b);
        CHECK(std::find(norm.begin(), norm.end(), shifted) != norm.end());
    }
    ComplementSearchOptions first_two;
    first_two.max_results = 2;
    CHECK(find_complements(a, first_two).size() == 2);
}

TEST_CASE("every complement reported is genuine and none is missed") {
    // exhaustive cross-check against subset enumeration on a small modulus
    const Modulus m(8);
    for (u32 mask = 1; mask < 256; ++mask) {
        ResidueSet a(m);
        for (u32 g = 0; g < 8; ++g)
            if (mask & (1u << g)) a.insert(g);
        if (8 % a.size() != 0) continue;
        const auto found = find_complements(a);
        std::vector<ResidueSet> expected;
        for (u32 bm = 1; bm < 256; ++bm) {
            ResidueSet b(m);
            for (u32 g = 0; g < 8; ++g)
                if (bm & (1u << g)) b.insert(g);
            if (b.size() == 8 / a.size() && is_factorization(a, b)) expected.push_back(b);
        }
        std::sort(expected.begin(), expected.end(), ResidueSet::canonical_less);
        REQUIRE(found.size() == expected.size());
        for (std::size_t i = 0; i < found.size(); ++i) CHECK(found[i] == expected[i]);
    }
}

TEST_CASE("verify_replacement examples") {
    const Modulus m10(10), m4(4);
    const auto w1 = FactorizationWitness::make(ResidueSet::of(m10, {0, 1, 2, 8, 9}),
                                               ResidueSet::of(m10, {0, 5}));
    REQUIRE(w1.has_value());
    CHECK(verify_replacement(*w1, 3));
    CHECK(verify_replacement(*w1, 1));
    CHECK_THROWS_AS(verify_replacement(*w1, 5), std::invalid_argument);
    const auto w2 =
        FactorizationWitness::make(ResidueSet::of(m4, {0, 2}), ResidueSet::of(m4, {0, 1}));
    REQUIRE(w2.has_value());
    CHECK(verify_replacement(*w2, 3));
}

TEST_CASE("replacement by coprime dilation holds for every small factorization") {
    // all normalized factorizations of Z_omega, omega <= 20
    for (u32 omega = 1; omega <= 20; ++omega) {
        const Modulus m(omega);
        for (u32 n = 1; n <= omega; ++n) {
            if (omega % n != 0) continue;
            ComplementSearchOptions normalized;
            normalized.normalized_only = true;
            for_each_combination(1, omega - 1, n - 1, [&](const std::vector<u32>& rest) {
                ResidueSet a(m);
                a.insert(0);
                for (u32 v : rest) a.insert(v);
                for (const auto& b : find_complements(a, normalized)) {
                    const auto w = FactorizationWitness::make(a, b);
                    REQUIRE(w.has_value());
                    for (u32 k = 1; k <= omega; ++k)
                        if (std::gcd(k, n) == 1) CHECK(verify_replacement(*w, k));
                }
            });
        }
    }
}

TEST_CASE("canonical_complement") {
    const Modulus m10(10), m4(4);
    const auto c1 = canonical_complement(ResidueSet::of(m10, {0, 1, 2, 8, 9}));
    REQUIRE(c1.has_value());
    CHECK(*c1 == ResidueSet::of(m10, {0, 5}));
    CHECK(is_factorization(ResidueSet::of(m10, {0, 1, 2, 8, 9}), *c1));
    CHECK(!canonical_complement(ResidueSet::of(m4, {0, 2})).has_value());
    const auto c3 = canonical_complement(ResidueSet::full(m4));
    REQUIRE(c3.has_value());
    CHECK(*c3 == ResidueSet::of(m4, {0}));
}

TEST_CASE("prefix-tail direct factors with proper size are never periodic") {
    // A = [0, n-k-1] u tail, 2k+1 <= n < omega, A a direct factor
    ComplementSearchOptions existence;
    existence.max_results = 1;
    for (u32 omega = 2; omega <= 60; ++omega) {
        const Modulus m(omega);
        for (u32 n = 3; n < omega; ++n) {
            if (omega % n != 0) continue;
            for (u32 k = 1; 2 * k + 1 <= n && k <= 2; ++k) {
                for_each_combination(n - k, omega - 1, k, [&](const std::vector<u32>& tail) {
                    ResidueSet a(m);
                    for (u32 v = 0; v + k < n; ++v) a.insert(v);
                    for (u32 t : tail) a.insert(t);
                    if (find_complements(a, existence).empty()) return;
                    CHECK(!stabilizer(a).is_periodic);
                });
            }
        }
    }
}
