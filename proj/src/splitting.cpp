#include "cycfact/splitting.hpp"

#include <algorithm>

#include "cycfact/factorization.hpp"

namespace cycfact {

namespace {

u32 reduce_mod(i64 v, u32 modulus) {
    i64 r = v % static_cast<i64>(modulus);
    if (r < 0) r += modulus;
    return static_cast<u32>(r);
}

i64 checked_pow(i64 base, u32 exp) {
    i64 r = 1;
    for (u32 i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(r, base, &r))
            throw std::overflow_error("prefix_multiplier_family: power overflows");
    return r;
}

// s with r*s = x (mod g); empty when gcd(r, g) does not divide x.
std::vector<u32> solve_linear(u32 r, u32 x, u32 g) {
    const u32 d = static_cast<u32>(std::gcd<u64>(r, g));
    if (x % d != 0) return {};
    const u32 g2 = g / d, r2 = r / d, x2 = x / d;
    // inverse of r2 mod g2 via extended Euclid
    i64 a = r2 % g2, b = g2, u0 = 1, u1 = 0;
    while (b) {
        const i64 q = a / b;
        a -= q * b;
        std::swap(a, b);
        u0 -= q * u1;
        std::swap(u0, u1);
    }
    const u32 inv = static_cast<u32>(((u0 % static_cast<i64>(g2)) + g2) % g2);
    const u32 s0 = static_cast<u32>(static_cast<u64>(x2) % g2 * inv % g2);
    std::vector<u32> out;
    out.reserve(d);
    for (u32 t = 0; t < d; ++t) out.push_back(s0 + t * g2);
    return out;
}

}  // namespace

MultiplierSet MultiplierSet::from_values(std::vector<i64> values) {
    if (values.empty()) throw std::invalid_argument("MultiplierSet: must be nonempty");
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end())
        throw std::invalid_argument("MultiplierSet: duplicate values");
    for (i64 v : values)
        if (v == 0) throw std::invalid_argument("MultiplierSet: 0 is not a valid multiplier");
    return MultiplierSet(std::move(values));
}

bool MultiplierSet::contains(i64 v) const {
    return std::binary_search(values_.begin(), values_.end(), v);
}

std::vector<u32> MultiplierSet::residues(u32 modulus) const {
    std::vector<u32> out;
    out.reserve(values_.size());
    for (i64 v : values_) out.push_back(reduce_mod(v, modulus));
    return out;
}

bool is_splitting(const MultiplierSet& m, const ResidueSet& s, Modulus g) {
    const u32 gv = g.value();
    if (!(s.modulus() == g)) throw std::invalid_argument("is_splitting: modulus mismatch");
    if (static_cast<u64>(m.size()) * s.size() != gv - 1) return false;
    const auto rs = m.residues(gv);
    ResidueSet seen(g);
    bool ok = true;
    s.for_each([&](u32 sv) {
        if (!ok) return;
        for (u32 r : rs) {
            const u32 prod = static_cast<u32>(static_cast<u64>(r) * sv % gv);
            if (prod == 0 || seen.contains(prod)) {
                ok = false;
                return;
            }
            seen.insert(prod);
        }
    });
    return ok;
}

namespace {

struct SplitSearch {
    const std::vector<u32>& mults;   // reduced multiplier residues
    const ResidueSet& universe;      // elements to represent, never containing 0
    const ResidueSet& allowed;       // candidate domain for splitting-set elements
    const u32 g;
    const std::size_t max_results;
    std::vector<ResidueSet> results;
    std::vector<u32> chosen;
    bool done = false;

    // chunk = {r*s : r in mults} when internally collision-free and inside
    // universe minus covered; empty result signals an invalid candidate.
    std::optional<ResidueSet> chunk_for(u32 s, const ResidueSet& covered) const {
        ResidueSet chunk(universe.modulus());
        for (u32 r : mults) {
            const u32 prod = static_cast<u32>(static_cast<u64>(r) * s % g);
            if (prod == 0 || chunk.contains(prod) || covered.contains(prod) ||
                !universe.contains(prod))
                return std::nullopt;
            chunk.insert(prod);
        }
        return chunk;
    }

    void dfs(const ResidueSet& covered) {
        if (covered.size() == universe.size()) {
            results.push_back(ResidueSet::from_elements(universe.modulus(), chosen));
            if (results.size() >= max_results) done = true;
            return;
        }
        // smallest unrepresented element
        u32 x = 0;
        bool found = false;
        universe.for_each([&](u32 v) {
            if (found || covered.contains(v)) return;
            x = v;
            found = true;
        });
        std::vector<u32> cands;
        for (u32 r : mults)
            for (u32 s : solve_linear(r, x, g))
                if (allowed.contains(s)) cands.push_back(s);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (u32 s : cands) {
            auto chunk = chunk_for(s, covered);
            if (!chunk) continue;
            chosen.push_back(s);
            dfs(covered.united(*chunk));
            chosen.pop_back();
            if (done) return;
        }
    }
};

std::vector<ResidueSet> run_split_search(const MultiplierSet& m, const ResidueSet& universe,
                                         const ResidueSet& allowed, Modulus g,
                                         const SplitSearchOptions& opt) {
    if (g.value() > opt.modulus_limit)
        throw BoundError("splitting search: modulus " + std::to_string(g.value()) +
                         " exceeds limit " + std::to_string(opt.modulus_limit));
    if (universe.contains(0))
        throw std::invalid_argument("splitting search: universe must not contain 0");
    if (universe.empty()) return {ResidueSet(g)};
    if (m.size() == 0 || universe.size() % m.size() != 0) return {};
    if (opt.max_results == 0) return {};
    const auto rs = m.residues(g.value());
    SplitSearch search{rs, universe, allowed, g.value(), opt.max_results, {}, {}, false};
    search.dfs(ResidueSet(g));
    std::sort(search.results.begin(), search.results.end(), ResidueSet::canonical_less);
    return std::move(search.results);
}

}  // namespace

std::vector<ResidueSet> search_splitting_sets(const MultiplierSet& m, Modulus g,
                                              const SplitSearchOptions& opt) {
    ResidueSet universe = ResidueSet::full(g);
    universe.erase(0);
    return run_split_search(m, universe, universe, g, opt);
}

std::vector<ResidueSet> search_splitting_sets_within(const MultiplierSet& m,
                                                     const ResidueSet& universe, Modulus g,
                                                     const SplitSearchOptions& opt) {
    return run_split_search(m, universe, universe, g, opt);
}

bool is_nonsingular(const MultiplierSet& m, Modulus g) {
    for (i64 v : m.values()) {
        const u64 a = static_cast<u64>(v < 0 ? -v : v);
        if (std::gcd<u64>(a, g.value()) != 1) return false;
    }
    return true;
}

ObstructionVerdict check_common_divisor_obstruction(const MultiplierSet& m, Modulus g) {
    if (!m.contains(1) || m.size() < 2)
        throw std::invalid_argument("check_common_divisor_obstruction: requires 1 in M, |M| > 1");
    u64 common = 0;
    for (i64 v : m.values()) {
        if (v == 1) continue;
        common = std::gcd<u64>(common, static_cast<u64>(v < 0 ? -v : v));
    }
    if (common > 1)
        for (const auto& [p, e] : factorize_integer(common).factors)
            if (g.value() % p == 0) return ObstructionVerdict{true, p};
    return ObstructionVerdict{false, 0};
}

ReductionVerdict nonsingular_reduction_check(const MultiplierSet& m, Modulus g,
                                             const SplitSearchOptions& opt) {
    if (!is_nonsingular(m, g))
        throw std::invalid_argument("nonsingular_reduction_check: M must be nonsingular");
    SplitSearchOptions existence = opt;
    existence.max_results = 1;
    ReductionVerdict v;
    v.splits_whole = !search_splitting_sets(m, g, existence).empty();
    bool all_primes = true;
    for (const auto& [p, e] : factorize_integer(g.value()).factors) {
        const bool splits_p = !search_splitting_sets(m, Modulus(p), existence).empty();
        v.per_prime.emplace_back(p, splits_p);
        all_primes = all_primes && splits_p;
    }
    v.agree = (v.splits_whole == all_primes);
    return v;
}

SubgroupRestrictionVerdict subgroup_restriction_check(const MultiplierSet& m, u64 p,
                                                      const SplitSearchOptions& opt) {
    if (!is_prime(p)) throw std::invalid_argument("subgroup_restriction_check: p must be prime");
    const Modulus mod(p);
    const auto rs = m.residues(static_cast<u32>(p));
    for (u32 r : rs)
        if (r == 0)
            throw std::invalid_argument("subgroup_restriction_check: multipliers must be nonzero mod p");

    // multiplicative closure of M mod p
    ResidueSet generated(mod);
    generated.insert(1);
    std::vector<u32> frontier{1};
    while (!frontier.empty()) {
        std::vector<u32> next;
        for (u32 x : frontier)
            for (u32 r : rs) {
                const u32 y = static_cast<u32>(static_cast<u64>(x) * r % p);
                if (!generated.contains(y)) {
                    generated.insert(y);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }

    SplitSearchOptions existence = opt;
    existence.max_results = 1;
    SubgroupRestrictionVerdict v{generated, false, false, false};
    v.splits_group = !search_splitting_sets(m, mod, existence).empty();
    v.splits_generated = !search_splitting_sets_within(m, generated, mod, existence).empty();
    v.agree = (v.splits_group == v.splits_generated);
    return v;
}

std::optional<ResidueSet> discrete_log_set(const MultiplierSet& m, i64 base, u64 p) {
    if (p < 2) throw std::invalid_argument("discrete_log_set: p must be >= 2");
    const u32 b = reduce_mod(base, static_cast<u32>(p));
    if (std::gcd<u64>(b, p) != 1)
        throw std::invalid_argument("discrete_log_set: gcd(base, p) must be 1");
    const u32 ord = multiplicative_order(b, p);
    std::vector<i64> exponent_of(p, -1);
    u64 x = 1 % p;
    for (u32 e = 0; e < ord; ++e) {
        exponent_of[x] = e;
        x = x * b % p;
    }
    ResidueSet out{Modulus(ord)};
    for (i64 v : m.values()) {
        const u32 r = reduce_mod(v, static_cast<u32>(p));
        const i64 e = exponent_of[r];
        if (e < 0) return std::nullopt;                       // outside <base>
        if (out.contains(static_cast<u32>(e))) return std::nullopt;  // collision mod p
        out.insert(static_cast<u32>(e));
    }
    return out;
}

MultiplierSet prefix_multiplier_family(i64 m, u32 n, u32 k,
                                       const std::vector<u32>& tail_exponents) {
    if (m < 2) throw std::invalid_argument("prefix_multiplier_family: m must be >= 2");
    if (tail_exponents.size() != k)
        throw std::invalid_argument("prefix_multiplier_family: tail must have k exponents");
    if (n < k + 1) throw std::invalid_argument("prefix_multiplier_family: need n >= k + 1");
    std::vector<i64> values;
    for (u32 e = 0; e + k < n; ++e) values.push_back(checked_pow(m, e));
    for (u32 e : tail_exponents) values.push_back(checked_pow(m, e));
    return MultiplierSet::from_values(std::move(values));  // rejects duplicates
}

TightnessResult tightness_construction(u32 k, u64 p, i64 m) {
    if (k < 1) throw std::invalid_argument("tightness_construction: k must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("tightness_construction: p must be prime");
    const u32 mr = reduce_mod(m, static_cast<u32>(p));
    if (std::gcd<u64>(mr, p) != 1)
        throw std::invalid_argument("tightness_construction: gcd(m, p) must be 1");
    const u32 ord = multiplicative_order(mr, p);
    if (ord % (4 * k) != 0)
        throw std::invalid_argument("tightness_construction: requires 4k | ord_p(m)");

    const u32 n = 2 * k;
    std::vector<u32> tail;
    for (u32 e = n; e < n + k; ++e) tail.push_back(e);
    MultiplierSet mult = prefix_multiplier_family(m, n, k, tail);

    const Modulus mod(p);
    // <m^{4k}> and its translate by m^k
    u64 m4k = 1;
    for (u32 i = 0; i < 4 * k; ++i) m4k = m4k * mr % p;
    ResidueSet core(mod);
    {
        u64 x = 1;
        do {
            core.insert(static_cast<u32>(x));
            x = x * m4k % p;
        } while (x != 1);
    }
    u64 mk = 1;
    for (u32 i = 0; i < k; ++i) mk = mk * mr % p;
    ResidueSet seed = core.united(dilate(core, static_cast<i64>(mk)));

    // spread over the cosets of <m> in Z_p^*
    ResidueSet m_subgroup(mod);
    {
        u64 x = 1;
        do {
            m_subgroup.insert(static_cast<u32>(x));
            x = x * mr % p;
        } while (x != 1);
    }
    ResidueSet s(mod);
    ResidueSet covered(mod);
    for (u32 a = 1; a < p; ++a) {
        if (covered.contains(a)) continue;
        covered.or_with(dilate(m_subgroup, a));
        s.or_with(dilate(seed, a));
    }

    auto witness = SplittingWitness::make(mod, mult, s);
    if (!witness)
        throw std::logic_error("tightness_construction: constructed set failed verification");

    auto exponents = discrete_log_set(witness->m, m, p);
    if (!exponents)
        throw std::logic_error("tightness_construction: multipliers left <m>");
    const bool crs = is_complete_residue_system(*exponents, n);
    return TightnessResult{std::move(*witness), std::move(*exponents), crs};
}

}  // namespace cycfact
