#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Hard cap for the dense bit-vector carrier.  Search operations impose much
// tighter per-call limits; this bounds what Modulus will accept at all.
#ifndef CYCFACT_MAX_MODULUS
#define CYCFACT_MAX_MODULUS (1u << 20)
#endif

namespace cycfact {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Thrown when a search or construction would exceed its configured size bound.
struct BoundError : std::runtime_error {
    explicit BoundError(const std::string& what) : std::runtime_error(what) {}
};

/// Order of the ambient cyclic group Z_omega (1 <= omega <= CYCFACT_MAX_MODULUS).
class Modulus {
public:
    explicit Modulus(u64 omega) {
        if (omega < 1 || omega > CYCFACT_MAX_MODULUS)
            throw std::invalid_argument("Modulus: omega must be in [1, " +
                                        std::to_string(CYCFACT_MAX_MODULUS) + "]");
        omega_ = static_cast<u32>(omega);
    }
    u32 value() const { return omega_; }
    bool operator==(const Modulus&) const = default;

private:
    u32 omega_;
};

/// A subset of Z_omega stored as a dense bit-vector (bit g set <=> g in the set).
/// Values are immutable in spirit: operations return fresh sets; the mutating
/// members exist for construction and for search internals working on local copies.
class ResidueSet {
public:
    explicit ResidueSet(Modulus m)
        : modulus_(m), words_((m.value() + 63) / 64, 0), size_(0) {}

    static ResidueSet of(Modulus m, std::initializer_list<u32> elems) {
        ResidueSet s(m);
        for (u32 g : elems) s.insert(g);
        return s;
    }
    static ResidueSet from_elements(Modulus m, const std::vector<u32>& elems) {
        ResidueSet s(m);
        for (u32 g : elems) s.insert(g);
        return s;
    }
    static ResidueSet full(Modulus m) {
        ResidueSet s(m);
        for (auto& w : s.words_) w = ~u64{0};
        s.mask_top();
        s.size_ = m.value();
        return s;
    }

    Modulus modulus() const { return modulus_; }
    u32 omega() const { return modulus_.value(); }
    u32 size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(u32 g) const {
        return g < omega() && (words_[g >> 6] >> (g & 63)) & 1u;
    }
    void insert(u32 g) {
        range_check(g);
        u64& w = words_[g >> 6];
        const u64 bit = u64{1} << (g & 63);
        if (!(w & bit)) { w |= bit; ++size_; }
    }
    void erase(u32 g) {
        range_check(g);
        u64& w = words_[g >> 6];
        const u64 bit = u64{1} << (g & 63);
        if (w & bit) { w &= ~bit; --size_; }
    }

    /// Smallest element; throws on the empty set.
    u32 min_element() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<u32>(i * 64 + std::countr_zero(words_[i]));
        throw std::invalid_argument("ResidueSet: empty set has no minimum");
    }

    /// Smallest g in [0, omega) NOT in the set; returns omega when full.
    u32 first_absent() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            u64 inv = ~words_[i];
            if (i + 1 == words_.size()) inv &= top_mask();
            if (inv) {
                u32 g = static_cast<u32>(i * 64 + std::countr_zero(inv));
                return g < omega() ? g : omega();
            }
        }
        return omega();
    }

    std::vector<u32> elements() const {
        std::vector<u32> out;
        out.reserve(size_);
        for_each([&](u32 g) { out.push_back(g); });
        return out;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            u64 w = words_[i];
            while (w) {
                fn(static_cast<u32>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    bool intersects(const ResidueSet& o) const {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool is_subset_of(const ResidueSet& o) const {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    void or_with(const ResidueSet& o) {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        size_ = popcount();
    }
    ResidueSet united(const ResidueSet& o) const {
        ResidueSet r = *this;
        r.or_with(o);
        return r;
    }
    ResidueSet intersected(const ResidueSet& o) const {
        check_same(o);
        ResidueSet r(modulus_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
        r.size_ = r.popcount();
        return r;
    }
    ResidueSet complemented() const {
        ResidueSet r(modulus_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.mask_top();
        r.size_ = omega() - size_;
        return r;
    }

    /// The set {g + s mod omega : g in this}, s already reduced to [0, omega).
    ResidueSet rotated(u32 s) const;

    bool operator==(const ResidueSet& o) const {
        return modulus_ == o.modulus_ && words_ == o.words_;
    }

    /// Ascending lexicographic order on the sorted element sequences.
    static bool canonical_less(const ResidueSet& x, const ResidueSet& y);

private:
    void range_check(u32 g) const {
        if (g >= omega()) throw std::invalid_argument("ResidueSet: element out of range");
    }
    void check_same(const ResidueSet& o) const {
        if (!(modulus_ == o.modulus_))
            throw std::invalid_argument("ResidueSet: modulus mismatch");
    }
    u64 top_mask() const {
        const u32 rem = omega() & 63;
        return rem ? (u64{1} << rem) - 1 : ~u64{0};
    }
    void mask_top() { words_.back() &= top_mask(); }
    u32 popcount() const {
        u32 n = 0;
        for (u64 w : words_) n += static_cast<u32>(std::popcount(w));
        return n;
    }

    Modulus modulus_;
    std::vector<u64> words_;
    u32 size_;
};

/// Prime factorization, primes strictly increasing, exponents >= 1.
struct PrimeSignature {
    std::vector<std::pair<u64, u32>> factors;

    u32 distinct_prime_count() const { return static_cast<u32>(factors.size()); }  // mu
    u32 total_prime_count() const {                                                // nu
        u32 n = 0;
        for (auto& [p, e] : factors) n += e;
        return n;
    }
    u64 value() const {
        u64 v = 1;
        for (auto& [p, e] : factors)
            for (u32 i = 0; i < e; ++i) v *= p;
        return v;
    }
};

/// Deterministic trial division; n = 1 yields the empty signature.
PrimeSignature factorize_integer(u64 n);

u32 count_distinct_prime_divisors(u64 n);   // mu(n)
u32 count_prime_divisors(u64 n);            // nu(n), with multiplicity
bool is_prime(u64 n);

/// Smallest l >= 1 with g^l = 1 (mod n); requires n >= 2 and gcd(g, n) = 1.
u32 multiplicative_order(u64 g, u64 n);

/// The subgroup <d mod omega> = {0, d, 2d, ...}; cardinality omega / gcd(d, omega).
ResidueSet cyclic_subgroup(i64 d, Modulus m);

/// {a + g mod omega : a in A}.
ResidueSet translate(const ResidueSet& a, i64 g);

/// {k*a mod omega : a in A}; cardinality drops when gcd(k, omega) > 1.
ResidueSet dilate(const ResidueSet& a, i64 k);

/// translate(A, -min(A)); rejects the empty set.
ResidueSet normalize(const ResidueSet& a);

/// True iff H contains 0 and is closed under addition mod omega.
bool is_subgroup(const ResidueSet& h);

// Shared set-literal grammar: comma-separated items, each `<int>` or
// `<int>..<int>` (inclusive range); whitespace ignored; duplicates rejected.
std::vector<i64> parse_integer_list(std::string_view text);
ResidueSet parse_residue_set(std::string_view text, Modulus m);
std::string format_residue_set(const ResidueSet& s);

}  // namespace cycfact
