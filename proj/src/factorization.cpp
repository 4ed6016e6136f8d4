#include "cycfact/factorization.hpp"

#include <algorithm>

namespace cycfact {

namespace {

void check_pair(const ResidueSet& a, const ResidueSet& b) {
    if (!(a.modulus() == b.modulus()))
        throw std::invalid_argument("factor sets must share a modulus");
    if (a.empty() || b.empty())
        throw std::invalid_argument("factor sets must be nonempty");
}

}  // namespace

SumsetProfile sumset_profile(const ResidueSet& a, const ResidueSet& b) {
    check_pair(a, b);
    const u32 omega = a.omega();
    SumsetProfile out{a.modulus(), std::vector<u32>(omega, 0)};
    a.for_each([&](u32 x) {
        b.for_each([&](u32 y) {
            u32 s = x + y;
            if (s >= omega) s -= omega;
            ++out.multiplicity[s];
        });
    });
    return out;
}

bool is_factorization(const ResidueSet& a, const ResidueSet& b) {
    check_pair(a, b);
    const u32 omega = a.omega();
    if (static_cast<u64>(a.size()) * b.size() != omega) return false;
    ResidueSet acc(a.modulus());
    bool ok = true;
    a.for_each([&](u32 x) {
        if (!ok) return;
        const ResidueSet shifted = b.rotated(x);
        if (acc.intersects(shifted)) {
            ok = false;
            return;
        }
        acc.or_with(shifted);
    });
    return ok;  // disjoint translates with |A|*|B| = omega already cover
}

bool is_complete_residue_system(const ResidueSet& a, u32 n) {
    if (a.size() != n)
        throw std::invalid_argument("is_complete_residue_system: |A| must equal n");
    std::vector<bool> seen(n, false);
    bool ok = true;
    a.for_each([&](u32 v) {
        const u32 r = v % n;
        if (seen[r]) ok = false;
        seen[r] = true;
    });
    return ok;
}

bool is_complete_residue_system(const std::vector<i64>& values, u32 n) {
    if (values.size() != n)
        throw std::invalid_argument("is_complete_residue_system: |A| must equal n");
    if (n == 0) throw std::invalid_argument("is_complete_residue_system: n must be >= 1");
    std::vector<bool> seen(n, false);
    for (i64 v : values) {
        i64 r = v % static_cast<i64>(n);
        if (r < 0) r += n;
        if (seen[static_cast<std::size_t>(r)]) return false;
        seen[static_cast<std::size_t>(r)] = true;
    }
    return true;
}

PeriodicityReport stabilizer(const ResidueSet& a) {
    if (a.empty()) throw std::invalid_argument("stabilizer: empty set");
    const u32 omega = a.omega();
    ResidueSet stab(a.modulus());
    stab.insert(0);
    const u32 m0 = a.min_element();
    for (u32 g = 1; g < omega; ++g) {
        u32 shifted = m0 + g;
        if (shifted >= omega) shifted -= omega;
        if (!a.contains(shifted)) continue;  // cheap reject before the full compare
        if (a.rotated(g) == a) stab.insert(g);
    }
    ResidueSet reps(a.modulus());
    ResidueSet covered(a.modulus());
    a.for_each([&](u32 v) {
        if (covered.contains(v)) return;
        reps.insert(v);
        covered.or_with(stab.rotated(v));
    });
    return PeriodicityReport{stab, stab.size() > 1, reps};
}

namespace {

struct ComplementSearch {
    const ResidueSet& a;
    const ComplementSearchOptions& opt;
    const u32 omega;
    const u32 amin;
    std::vector<ResidueSet> results;
    std::vector<u32> chosen;
    bool has_zero = false;
    bool done = false;

    ComplementSearch(const ResidueSet& a_, const ComplementSearchOptions& opt_)
        : a(a_), opt(opt_), omega(a_.omega()), amin(a_.min_element()) {}

    void dfs(const ResidueSet& covered) {
        if (covered.size() == omega) {
            if (!opt.normalized_only || has_zero) {
                results.push_back(ResidueSet::from_elements(a.modulus(), chosen));
                if (results.size() >= opt.max_results) done = true;
            }
            return;
        }
        const u32 g = covered.first_absent();
        std::vector<u32> cands;
        cands.reserve(a.size());
        a.for_each([&](u32 av) { cands.push_back((g + omega - av) % omega); });
        std::sort(cands.begin(), cands.end());
        for (u32 b : cands) {
            const ResidueSet chunk = a.rotated(b);
            if (covered.intersects(chunk)) continue;
            // Once min(A) is covered by a chunk other than A itself, no
            // extension can ever contain 0, so normalized-only search prunes.
            if (opt.normalized_only && !has_zero && b != 0 && chunk.contains(amin)) continue;
            ResidueSet next = covered;
            next.or_with(chunk);
            chosen.push_back(b);
            const bool saved = has_zero;
            if (b == 0) has_zero = true;
            dfs(next);
            has_zero = saved;
            chosen.pop_back();
            if (done) return;
        }
    }
};

}  // namespace

std::vector<ResidueSet> find_complements(const ResidueSet& a, const ComplementSearchOptions& opt) {
    const u32 omega = a.omega();
    if (omega > opt.omega_limit)
        throw BoundError("find_complements: omega " + std::to_string(omega) +
                         " exceeds search limit " + std::to_string(opt.omega_limit));
    if (a.empty() || omega % a.size() != 0) return {};
    if (opt.max_results == 0) return {};
    ComplementSearch search(a, opt);
    search.dfs(ResidueSet(a.modulus()));
    std::sort(search.results.begin(), search.results.end(), ResidueSet::canonical_less);
    return std::move(search.results);
}

bool verify_replacement(const FactorizationWitness& w, i64 k) {
    const u64 ka = static_cast<u64>(k < 0 ? -k : k);
    if (std::gcd<u64>(ka, w.a().size()) != 1)
        throw std::invalid_argument("verify_replacement: gcd(k, |A|) must be 1");
    return is_factorization(dilate(w.a(), k), w.b());
}

std::optional<ResidueSet> canonical_complement(const ResidueSet& a) {
    if (a.empty()) return std::nullopt;
    const u32 omega = a.omega();
    const u32 n = a.size();
    if (omega % n != 0) return std::nullopt;
    if (!is_complete_residue_system(a, n)) return std::nullopt;
    return cyclic_subgroup(n, a.modulus());
}

}  // namespace cycfact
