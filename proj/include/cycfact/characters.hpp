#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cycfact/cyclic_core.hpp"
#include "cycfact/factorization.hpp"

namespace cycfact {

/// The character chi_t of Z_omega: g -> zeta_omega^{t*g}.  t = 0 is the
/// unity character.
struct CharacterIndex {
    u32 t;
    Modulus omega;
};

/// An exact element of Z[zeta_omega]: value = sum coeffs[j] * zeta_omega^j.
/// The representation is not canonical; zero is decided by is_zero, not by
/// all coefficients vanishing.
class CycloElement {
public:
    explicit CycloElement(Modulus m) : modulus_(m), coeffs_(m.value(), 0) {}

    Modulus modulus() const { return modulus_; }
    u32 order() const { return modulus_.value(); }
    const std::vector<i64>& coefficients() const { return coeffs_; }
    i64 coefficient(u32 exponent) const { return coeffs_.at(exponent); }

    void add_term(u32 exponent, i64 c) { coeffs_.at(exponent) += c; }

    CycloElement operator-(const CycloElement& o) const {
        if (!(modulus_ == o.modulus_))
            throw std::invalid_argument("CycloElement: modulus mismatch");
        CycloElement r(modulus_);
        for (u32 j = 0; j < order(); ++j) r.coeffs_[j] = coeffs_[j] - o.coeffs_[j];
        return r;
    }

private:
    Modulus modulus_;
    std::vector<i64> coeffs_;
};

/// Coefficients of the cyclotomic polynomial Phi_d, constant term first,
/// computed by exact integer polynomial division; d <= 100000.
std::vector<i64> cyclotomic_polynomial(u32 d);

/// chi(A) = sum over a in A of zeta^{t*a}: coeffs[j] = #{a : t*a = j (mod omega)}.
CycloElement chi_sum(const ResidueSet& a, const CharacterIndex& chi);

/// Exact zero test in Z[zeta].  Collapses the support onto the subfield it
/// generates, then reduces in the tensor-product integral basis of Z[zeta_d]
/// (one axis per prime power of d); the value is zero iff every reduced
/// coordinate vanishes.  Decides the same predicate as divisibility of the
/// collapsed polynomial by Phi_d, with no coefficient blow-up.
bool is_zero(const CycloElement& x);

/// Whether two representations denote the same value.
inline bool values_equal(const CycloElement& x, const CycloElement& y) {
    return is_zero(x - y);
}

/// Ann(A) = {t : chi_t(A) = 0}, as a set of character indices.
ResidueSet annihilator(const ResidueSet& a);

/// Ker chi_t = {g : t*g = 0 (mod omega)} = <omega / gcd(t, omega)>.
ResidueSet kernel(const CharacterIndex& chi);

/// True iff every character annihilating both subgroups H and K annihilates A.
/// Empty A is annihilated by every character.
bool annihilator_inclusion(const ResidueSet& h, const ResidueSet& k, const ResidueSet& a);

/// Representatives E, F with A = (H + E) u (K + F), sums direct, union
/// disjoint; found by covering the smallest uncovered element of A with its
/// full H-coset (preferred) or K-coset.
struct UnionDecomposition {
    ResidueSet h_reps;  // E
    ResidueSet k_reps;  // F
};
std::optional<UnionDecomposition> decompose_union(const ResidueSet& h, const ResidueSet& k,
                                                  const ResidueSet& a, u32 omega_limit = 96);

/// For |G| = p^e q^f and |B| = pq: does some faithful character annihilate B,
/// is B periodic, and does the first imply the second.
struct PqPeriodicityVerdict {
    std::optional<u32> annihilating_faithful_t;
    bool periodic;
    bool implication_holds;
};
PqPeriodicityVerdict pq_periodicity_check(const ResidueSet& b, const PrimeSignature& sig);

}  // namespace cycfact
