#include "cycfact/characters.hpp"

#include <algorithm>

namespace cycfact {

namespace {

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("cyclotomic arithmetic overflowed");
    return r;
}
i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("cyclotomic arithmetic overflowed");
    return r;
}

// f(x^p)
std::vector<i64> compose_power(const std::vector<i64>& f, u32 p) {
    std::vector<i64> out((f.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) out[i * p] = f[i];
    return out;
}

// Exact division by a monic divisor; throws if the remainder is nonzero.
std::vector<i64> poly_divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
    if (den.empty() || den.back() != 1)
        throw std::logic_error("poly_divide_exact: divisor must be monic");
    if (num.size() < den.size()) throw std::logic_error("poly_divide_exact: degree underflow");
    std::vector<i64> q(num.size() - den.size() + 1, 0);
    for (std::size_t pos = num.size(); pos-- >= den.size();) {
        const i64 c = num[pos];
        if (c == 0) continue;
        const std::size_t shift = pos - (den.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[shift + j] = checked_sub(num[shift + j], checked_mul(c, den[j]));
    }
    for (i64 c : num)
        if (c != 0) throw std::logic_error("poly_divide_exact: division not exact");
    return q;
}

}  // namespace

std::vector<i64> cyclotomic_polynomial(u32 d) {
    if (d < 1) throw std::invalid_argument("cyclotomic_polynomial: d must be >= 1");
    if (d > 100000) throw BoundError("cyclotomic_polynomial: d exceeds bound 100000");
    const auto sig = factorize_integer(d);
    std::vector<i64> f{-1, 1};  // Phi_1
    u32 rad = 1;
    for (const auto& [p, e] : sig.factors) {
        // Phi_{m p}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m.
        f = poly_divide_exact(compose_power(f, static_cast<u32>(p)), f);
        rad *= static_cast<u32>(p);
    }
    const u32 spread = d / rad;  // Phi_d(x) = Phi_rad(x^{d/rad})
    if (spread == 1) return f;
    return compose_power(f, spread);
}

CycloElement chi_sum(const ResidueSet& a, const CharacterIndex& chi) {
    if (!(a.modulus() == chi.omega))
        throw std::invalid_argument("chi_sum: modulus mismatch");
    const u64 omega = a.omega();
    CycloElement out(a.modulus());
    a.for_each([&](u32 g) {
        out.add_term(static_cast<u32>(static_cast<u64>(chi.t) * g % omega), 1);
    });
    return out;
}

bool is_zero(const CycloElement& x) {
    const u32 omega = x.order();
    const auto& c = x.coefficients();

    u64 g = omega;  // gcd of omega and all support exponents
    bool any = false;
    for (u32 j = 0; j < omega; ++j) {
        if (c[j] == 0) continue;
        any = true;
        g = std::gcd<u64>(g, j);
    }
    if (!any) return true;

    // The value lives in Z[zeta_d] for d = omega / g: collapse exponents.
    const u32 d = omega / static_cast<u32>(g);
    std::vector<i64> e(d, 0);
    for (u32 j = 0; j < omega; ++j)
        if (c[j]) e[j / g] += c[j];
    if (d == 1) return e[0] == 0;

    // One tensor axis per prime power of d; exponent j maps to coordinates
    // (j mod m_1, ..., j mod m_k).
    const auto sig = factorize_integer(d);
    const std::size_t axes = sig.factors.size();
    std::vector<u32> dim(axes), prime(axes);
    for (std::size_t i = 0; i < axes; ++i) {
        prime[i] = static_cast<u32>(sig.factors[i].first);
        u32 m = 1;
        for (u32 t = 0; t < sig.factors[i].second; ++t) m *= prime[i];
        dim[i] = m;
    }
    std::vector<u64> stride(axes);
    u64 acc = 1;
    for (std::size_t i = axes; i-- > 0;) {
        stride[i] = acc;
        acc *= dim[i];
    }

    std::vector<i64> tensor(d, 0);
    for (u32 j = 0; j < d; ++j) {
        if (!e[j]) continue;
        u64 flat = 0;
        for (std::size_t i = 0; i < axes; ++i) flat += static_cast<u64>(j % dim[i]) * stride[i];
        tensor[flat] += e[j];
    }

    // Reduce each axis to the basis {y^x : 0 <= x < phi(m)} of Z[y]/Phi_m(y),
    // m = p^a, using y^{phi+s} = -(y^s + y^{s+m/p} + ... + y^{s+(p-2)m/p}).
    for (std::size_t axisIdx = 0; axisIdx < axes; ++axisIdx) {
        const u32 m = dim[axisIdx];
        const u32 p = prime[axisIdx];
        const u32 step = m / p;
        const u32 phi = m - step;
        const u64 inner = stride[axisIdx];
        const u64 block = static_cast<u64>(m) * inner;
        for (u64 base = 0; base < static_cast<u64>(d); base += block) {
            for (u32 xcoord = phi; xcoord < m; ++xcoord) {
                const u64 src = base + static_cast<u64>(xcoord) * inner;
                const u32 s = xcoord - phi;
                for (u32 t = 0; t + 1 < p; ++t) {
                    const u64 dst = base + static_cast<u64>(s + t * step) * inner;
                    for (u64 j2 = 0; j2 < inner; ++j2) tensor[dst + j2] -= tensor[src + j2];
                }
                for (u64 j2 = 0; j2 < inner; ++j2) tensor[src + j2] = 0;
            }
        }
    }

    return std::all_of(tensor.begin(), tensor.end(), [](i64 v) { return v == 0; });
}

ResidueSet annihilator(const ResidueSet& a) {
    if (a.empty()) throw std::invalid_argument("annihilator: empty set");
    const u32 omega = a.omega();
    ResidueSet out(a.modulus());
    for (u32 t = 0; t < omega; ++t)
        if (is_zero(chi_sum(a, CharacterIndex{t, a.modulus()}))) out.insert(t);
    return out;
}

ResidueSet kernel(const CharacterIndex& chi) {
    const u32 omega = chi.omega.value();
    const u64 g = std::gcd<u64>(chi.t % omega, omega);
    return cyclic_subgroup(static_cast<i64>(omega / g), chi.omega);
}

bool annihilator_inclusion(const ResidueSet& h, const ResidueSet& k, const ResidueSet& a) {
    if (!(h.modulus() == a.modulus()) || !(k.modulus() == a.modulus()))
        throw std::invalid_argument("annihilator_inclusion: modulus mismatch");
    if (!is_subgroup(h) || !is_subgroup(k))
        throw std::invalid_argument("annihilator_inclusion: H and K must be subgroups");
    if (a.empty()) return true;  // chi(empty) = 0 for every character
    const ResidueSet common = annihilator(h).intersected(annihilator(k));
    return common.is_subset_of(annihilator(a));
}

namespace {

struct UnionCoverSearch {
    const ResidueSet& h;
    const ResidueSet& k;
    const ResidueSet& a;
    std::vector<u32> e, f;

    bool dfs(const ResidueSet& covered) {
        if (covered.size() == a.size()) return true;
        // smallest element of A not yet covered
        u32 x = 0;
        bool found = false;
        a.for_each([&](u32 v) {
            if (found || covered.contains(v)) return;
            x = v;
            found = true;
        });
        const ResidueSet hcoset = h.rotated(x);
        if (hcoset.is_subset_of(a) && !covered.intersects(hcoset)) {
            e.push_back(x);
            if (dfs(covered.united(hcoset))) return true;
            e.pop_back();
        }
        const ResidueSet kcoset = k.rotated(x);
        if (kcoset.is_subset_of(a) && !covered.intersects(kcoset)) {
            f.push_back(x);
            if (dfs(covered.united(kcoset))) return true;
            f.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<UnionDecomposition> decompose_union(const ResidueSet& h, const ResidueSet& k,
                                                  const ResidueSet& a, u32 omega_limit) {
    if (!(h.modulus() == a.modulus()) || !(k.modulus() == a.modulus()))
        throw std::invalid_argument("decompose_union: modulus mismatch");
    if (!is_subgroup(h) || !is_subgroup(k))
        throw std::invalid_argument("decompose_union: H and K must be subgroups");
    if (a.omega() > omega_limit)
        throw BoundError("decompose_union: omega exceeds search limit " +
                         std::to_string(omega_limit));
    UnionCoverSearch search{h, k, a, {}, {}};
    if (!search.dfs(ResidueSet(a.modulus()))) return std::nullopt;
    return UnionDecomposition{ResidueSet::from_elements(a.modulus(), search.e),
                              ResidueSet::from_elements(a.modulus(), search.f)};
}

PqPeriodicityVerdict pq_periodicity_check(const ResidueSet& b, const PrimeSignature& sig) {
    const u32 omega = b.omega();
    if (sig.value() != omega)
        throw std::invalid_argument("pq_periodicity_check: signature does not match modulus");
    if (sig.factors.size() != 2)
        throw std::invalid_argument("pq_periodicity_check: |G| must be p^e q^f");
    const u64 p = sig.factors[0].first, q = sig.factors[1].first;
    if (b.size() != p * q)
        throw std::invalid_argument("pq_periodicity_check: |B| must equal pq");

    PqPeriodicityVerdict verdict{std::nullopt, false, true};
    for (u32 t = 1; t < omega; ++t) {
        if (std::gcd<u64>(t, omega) != 1) continue;
        if (is_zero(chi_sum(b, CharacterIndex{t, b.modulus()}))) {
            verdict.annihilating_faithful_t = t;
            break;
        }
    }
    verdict.periodic = stabilizer(b).is_periodic;
    verdict.implication_holds = !verdict.annihilating_faithful_t.has_value() || verdict.periodic;
    return verdict;
}

}  // namespace cycfact
