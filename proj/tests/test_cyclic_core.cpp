#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "cycfact/cyclic_core.hpp"

using namespace cycfact;

TEST_CASE("factorize_integer basic values") {
    CHECK(factorize_integer(1).factors.empty());
    const auto f12 = factorize_integer(12);
    CHECK(f12.factors == std::vector<std::pair<u64, u32>>{{2, 2}, {3, 1}});
    CHECK(f12.distinct_prime_count() == 2);
    CHECK(f12.total_prime_count() == 3);
    const auto f36 = factorize_integer(36);
    CHECK(f36.factors == std::vector<std::pair<u64, u32>>{{2, 2}, {3, 2}});
    CHECK(f36.distinct_prime_count() == 2);
    CHECK(f36.total_prime_count() == 4);
    CHECK_THROWS_AS(factorize_integer(0), std::invalid_argument);
}

TEST_CASE("factorize_integer round-trips over the full desk range") {
    for (u64 n = 1; n <= 1000000; ++n) {
        const auto sig = factorize_integer(n);
        REQUIRE(sig.value() == n);
    }
    // primality of each reported prime, spot-checked on a coarse stride
    for (u64 n = 2; n <= 1000000; n += 9973) {
        for (const auto& [p, e] : factorize_integer(n).factors) {
            bool prime = p >= 2;
            for (u64 d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            CHECK(prime);
        }
    }
}

TEST_CASE("multiplicative_order examples and error paths") {
    CHECK(multiplicative_order(2, 5) == 4);
    CHECK(multiplicative_order(1, 7) == 1);
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK_THROWS_AS(multiplicative_order(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(multiplicative_order(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(multiplicative_order(3, 1), std::invalid_argument);
}

TEST_CASE("multiplicative_order divides the unit group order") {
    for (u64 n = 2; n <= 1000; ++n) {
        u32 phi = 0;
        for (u64 g = 1; g < n; ++g)
            if (std::gcd(g, n) == 1) ++phi;
        // a handful of units per modulus keeps this brisk
        u32 tested = 0;
        for (u64 g = 1; g < n && tested < 8; ++g) {
            if (std::gcd(g, n) != 1) continue;
            ++tested;
            const u32 ord = multiplicative_order(g, n);
            CHECK(phi % ord == 0);
            // independent re-check by exponent enumeration
            u64 x = 1;
            for (u32 i = 0; i < ord; ++i) x = x * g % n;
            CHECK(x == 1);
        }
    }
}

TEST_CASE("cyclic_subgroup") {
    CHECK(cyclic_subgroup(5, Modulus(10)) == ResidueSet::of(Modulus(10), {0, 5}));
    CHECK(cyclic_subgroup(0, Modulus(10)) == ResidueSet::of(Modulus(10), {0}));
    CHECK(cyclic_subgroup(3, Modulus(12)) == ResidueSet::of(Modulus(12), {0, 3, 6, 9}));
    CHECK(cyclic_subgroup(-3, Modulus(12)) == ResidueSet::of(Modulus(12), {0, 3, 6, 9}));
    for (u32 d = 0; d < 12; ++d) {
        const auto h = cyclic_subgroup(d, Modulus(12));
        CHECK(h.size() == 12 / std::gcd<u64>(d == 0 ? 12 : d, 12));
        CHECK(is_subgroup(h));
        // closure under addition
        h.for_each([&](u32 x) {
            h.for_each([&](u32 y) { CHECK(h.contains((x + y) % 12)); });
        });
    }
}

TEST_CASE("translate, dilate, normalize examples") {
    const Modulus m4(4), m10(10);
    CHECK(translate(ResidueSet::of(m4, {0, 2}), 2) == ResidueSet::of(m4, {0, 2}));
    CHECK(translate(ResidueSet::of(m4, {0, 1}), 1) == ResidueSet::of(m4, {1, 2}));
    CHECK(translate(ResidueSet::of(m10, {0, 1, 2, 8, 9}), 5) ==
          ResidueSet::of(m10, {5, 6, 7, 3, 4}));
    CHECK(dilate(ResidueSet::of(m10, {0, 1, 2, 8, 9}), 3) ==
          ResidueSet::of(m10, {0, 3, 6, 4, 7}));
    CHECK(dilate(ResidueSet::of(m10, {0, 1, 2, 8, 9}), 1) ==
          ResidueSet::of(m10, {0, 1, 2, 8, 9}));
    CHECK(dilate(ResidueSet::of(m10, {0, 5}), 2) == ResidueSet::of(m10, {0}));
    CHECK(normalize(ResidueSet::of(m10, {3, 4, 5})) == ResidueSet::of(m10, {0, 1, 2}));
    CHECK(normalize(ResidueSet::of(m4, {0, 2})) == ResidueSet::of(m4, {0, 2}));
    CHECK(normalize(ResidueSet::of(m10, {1, 6})) == ResidueSet::of(m10, {0, 5}));
    CHECK_THROWS_AS(normalize(ResidueSet(m4)), std::invalid_argument);
}

TEST_CASE("rotation matches elementwise translation on random sets") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 400; ++trial) {
        const u32 omega = 1 + static_cast<u32>(rng() % 200);
        const Modulus m(omega);
        ResidueSet a(m);
        for (u32 g = 0; g < omega; ++g)
            if (rng() & 1) a.insert(g);
        const u32 s = static_cast<u32>(rng() % omega);
        ResidueSet expected(m);
        a.for_each([&](u32 g) { expected.insert((g + s) % omega); });
        CHECK(a.rotated(s) == expected);
        CHECK(a.rotated(s).size() == a.size());
        // round trip
        CHECK(translate(translate(a, s), static_cast<i64>(omega) - s) == a);
    }
}

TEST_CASE("dilation preserves cardinality when gcd(k, omega) = 1") {
    std::mt19937_64 rng(999);
    for (int trial = 0; trial < 200; ++trial) {
        const u32 omega = 2 + static_cast<u32>(rng() % 100);
        const Modulus m(omega);
        ResidueSet a(m);
        for (u32 g = 0; g < omega; ++g)
            if (rng() % 3 == 0) a.insert(g);
        const u32 k = 1 + static_cast<u32>(rng() % (omega - 1));
        if (std::gcd(k, omega) != 1) continue;
        CHECK(dilate(a, k).size() == a.size());
    }
}

TEST_CASE("ResidueSet bookkeeping") {
    const Modulus m(70);
    ResidueSet s(m);
    CHECK(s.empty());
    CHECK(s.first_absent() == 0);
    s.insert(0);
    s.insert(69);
    s.insert(69);  // idempotent
    CHECK(s.size() == 2);
    CHECK(s.min_element() == 0);
    CHECK(s.first_absent() == 1);
    CHECK(ResidueSet::full(m).size() == 70);
    CHECK(ResidueSet::full(m).first_absent() == 70);
    CHECK_THROWS_AS(s.insert(70), std::invalid_argument);
    s.erase(0);
    CHECK(s.size() == 1);
    CHECK(s.min_element() == 69);

    CHECK(ResidueSet::canonical_less(ResidueSet::of(m, {0, 2}), ResidueSet::of(m, {0, 3})));
    CHECK(!ResidueSet::canonical_less(ResidueSet::of(m, {0, 3}), ResidueSet::of(m, {0, 2})));
}

TEST_CASE("modulus bounds") {
    CHECK_THROWS_AS(Modulus(0), std::invalid_argument);
    CHECK_NOTHROW(Modulus(1));
    CHECK_NOTHROW(Modulus(CYCFACT_MAX_MODULUS));
    CHECK_THROWS_AS(Modulus(static_cast<u64>(CYCFACT_MAX_MODULUS) + 1), std::invalid_argument);
}

TEST_CASE("set literal grammar") {
    const Modulus m(10);
    CHECK(parse_residue_set("0..2,8,9", m) == ResidueSet::of(m, {0, 1, 2, 8, 9}));
    CHECK(parse_residue_set(" 0 .. 2 , 8 , 9 ", m) == ResidueSet::of(m, {0, 1, 2, 8, 9}));
    CHECK(parse_integer_list("-3..-1") == std::vector<i64>{-3, -2, -1});
    CHECK(parse_integer_list("5") == std::vector<i64>{5});
    CHECK(parse_integer_list("").empty());
    CHECK_THROWS_AS(parse_integer_list("3..1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_integer_list("1,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_integer_list("0..2,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_integer_list("a,b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_integer_list("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_residue_set("10", m), std::invalid_argument);
    CHECK_THROWS_AS(parse_residue_set("-1", m), std::invalid_argument);
    CHECK(format_residue_set(ResidueSet::of(m, {9, 0, 5})) == "0,5,9");
}
