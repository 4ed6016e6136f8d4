#include "cycfact/cyclic_core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace cycfact {

ResidueSet ResidueSet::rotated(u32 s) const {
    const u32 omega = modulus_.value();
    s %= omega;
    if (s == 0) return *this;
    const std::size_t nw = words_.size();

    // tmp = value << s, wide enough for bits below 2*omega.
    std::vector<u64> tmp(2 * nw + 1, 0);
    const u32 wo = s >> 6, bo = s & 63;
    for (std::size_t i = 0; i < nw; ++i) {
        const u64 w = words_[i];
        if (!w) continue;
        tmp[i + wo] |= bo ? (w << bo) : w;
        if (bo) tmp[i + wo + 1] |= w >> (64 - bo);
    }

    // out bit g = tmp bit g | tmp bit (g + omega): bits pushed past omega wrap.
    ResidueSet out(modulus_);
    const u32 fw = omega >> 6, fb = omega & 63;
    for (std::size_t i = 0; i < nw; ++i) {
        u64 high = tmp[i + fw] >> fb;
        if (fb) high |= tmp[i + fw + 1] << (64 - fb);
        out.words_[i] = tmp[i] | high;
    }
    out.mask_top();
    out.size_ = out.popcount();
    return out;
}

bool ResidueSet::canonical_less(const ResidueSet& x, const ResidueSet& y) {
    const auto ex = x.elements(), ey = y.elements();
    return std::lexicographical_compare(ex.begin(), ex.end(), ey.begin(), ey.end());
}

PrimeSignature factorize_integer(u64 n) {
    if (n < 1) throw std::invalid_argument("factorize_integer: n must be >= 1");
    PrimeSignature sig;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        u32 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        sig.factors.emplace_back(p, e);
    }
    if (n > 1) sig.factors.emplace_back(n, 1);
    return sig;
}

u32 count_distinct_prime_divisors(u64 n) { return factorize_integer(n).distinct_prime_count(); }
u32 count_prime_divisors(u64 n) { return factorize_integer(n).total_prime_count(); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    const auto sig = factorize_integer(n);
    return sig.factors.size() == 1 && sig.factors[0].second == 1;
}

u32 multiplicative_order(u64 g, u64 n) {
    if (n < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    g %= n;
    if (std::gcd(g, n) != 1)
        throw std::invalid_argument("multiplicative_order: gcd(g, n) must be 1");
    u32 l = 1;
    u64 x = g;
    while (x != 1) { x = x * g % n; ++l; }
    return l;
}

namespace {
u32 reduce_mod(i64 v, u32 omega) {
    i64 r = v % static_cast<i64>(omega);
    if (r < 0) r += omega;
    return static_cast<u32>(r);
}
}  // namespace

ResidueSet cyclic_subgroup(i64 d, Modulus m) {
    const u32 omega = m.value();
    const u32 dr = reduce_mod(d, omega);
    const u32 step = static_cast<u32>(std::gcd<u64>(dr, omega));  // <d> = <gcd(d, omega)>
    ResidueSet out(m);
    for (u32 g = 0; g < omega; g += step) out.insert(g);
    return out;
}

ResidueSet translate(const ResidueSet& a, i64 g) {
    return a.rotated(reduce_mod(g, a.omega()));
}

ResidueSet dilate(const ResidueSet& a, i64 k) {
    const u64 omega = a.omega();
    const u64 kr = reduce_mod(k, a.omega());
    ResidueSet out(a.modulus());
    a.for_each([&](u32 g) { out.insert(static_cast<u32>(kr * g % omega)); });
    return out;
}

ResidueSet normalize(const ResidueSet& a) {
    if (a.empty()) throw std::invalid_argument("normalize: empty set");
    return translate(a, -static_cast<i64>(a.min_element()));
}

bool is_subgroup(const ResidueSet& h) {
    if (h.empty() || !h.contains(0)) return false;
    const u32 omega = h.omega();
    if (omega % h.size() != 0) return false;
    // Subgroups of Z_omega are exactly <omega / size>.
    return h == cyclic_subgroup(omega / h.size(), h.modulus());
}

namespace {

i64 parse_int(std::string_view tok) {
    i64 v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("set literal: malformed integer '" + std::string(tok) + "'");
    return v;
}

}  // namespace

std::vector<i64> parse_integer_list(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);

    std::vector<i64> out;
    std::size_t pos = 0;
    while (pos < cleaned.size()) {
        std::size_t comma = cleaned.find(',', pos);
        if (comma == std::string::npos) comma = cleaned.size();
        std::string_view item(cleaned.data() + pos, comma - pos);
        if (item.empty()) throw std::invalid_argument("set literal: empty item");
        const std::size_t dots = item.find("..", 1);  // skip a leading sign
        if (dots != std::string_view::npos) {
            const i64 lo = parse_int(item.substr(0, dots));
            const i64 hi = parse_int(item.substr(dots + 2));
            if (lo > hi)
                throw std::invalid_argument("set literal: range lower bound exceeds upper bound");
            for (i64 v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(parse_int(item));
        }
        pos = comma + 1;
    }
    auto sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("set literal: duplicate element");
    return out;
}

ResidueSet parse_residue_set(std::string_view text, Modulus m) {
    ResidueSet out(m);
    for (i64 v : parse_integer_list(text)) {
        if (v < 0 || v >= static_cast<i64>(m.value()))
            throw std::invalid_argument("set literal: element " + std::to_string(v) +
                                        " out of range for modulus " + std::to_string(m.value()));
        out.insert(static_cast<u32>(v));
    }
    return out;
}

std::string format_residue_set(const ResidueSet& s) {
    std::string out;
    bool first = true;
    s.for_each([&](u32 g) {
        if (!first) out.push_back(',');
        out += std::to_string(g);
        first = false;
    });
    return out;
}

}  // namespace cycfact
