#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "cycfact/cyclic_core.hpp"

namespace cycfact {

/// multiplicity[g] = number of pairs (a, b) in A x B with a + b = g (mod omega).
struct SumsetProfile {
    Modulus modulus;
    std::vector<u32> multiplicity;
};

/// Exact sum multiplicities via the double loop over A x B.
SumsetProfile sumset_profile(const ResidueSet& a, const ResidueSet& b);

/// True iff every group element has exactly one representation a + b.
/// Word-parallel: the translates B + a must be pairwise disjoint and
/// |A|*|B| = omega forces them to cover.
bool is_factorization(const ResidueSet& a, const ResidueSet& b);

/// A certified factorization Z_omega = A + B.
class FactorizationWitness {
public:
    static std::optional<FactorizationWitness> make(const ResidueSet& a, const ResidueSet& b) {
        if (!is_factorization(a, b)) return std::nullopt;
        return FactorizationWitness(a, b);
    }
    const ResidueSet& a() const { return a_; }
    const ResidueSet& b() const { return b_; }
    Modulus modulus() const { return a_.modulus(); }

private:
    FactorizationWitness(ResidueSet a, ResidueSet b) : a_(std::move(a)), b_(std::move(b)) {}
    ResidueSet a_, b_;
};

/// True iff {a mod n : a in A} = {0, ..., n-1}; requires |A| = n.
bool is_complete_residue_system(const ResidueSet& a, u32 n);
bool is_complete_residue_system(const std::vector<i64>& values, u32 n);

/// Stable subgroup M = {g : A + g = A}, periodicity flag, and the minimal
/// representative of each M-coset inside A.
struct PeriodicityReport {
    ResidueSet stabilizer;
    bool is_periodic;
    ResidueSet coset_reps;
};
PeriodicityReport stabilizer(const ResidueSet& a);

struct ComplementSearchOptions {
    bool normalized_only = false;
    std::size_t max_results = std::numeric_limits<std::size_t>::max();
    u32 omega_limit = 256;
};

/// All B with Z_omega = A + B, found by exact-cover backtracking on the
/// smallest uncovered element.  Returns the empty list when |A| does not
/// divide omega; throws BoundError when omega exceeds the search limit.
/// The result list is in ascending canonical order; under max_results
/// truncation the kept subset is the deterministic DFS-first one.
std::vector<ResidueSet> find_complements(const ResidueSet& a,
                                         const ComplementSearchOptions& opt = {});

/// Checks that kA still complements B; requires gcd(k, |A|) = 1.
bool verify_replacement(const FactorizationWitness& w, i64 k);

/// When |A| divides omega and A is a complete residue system mod |A|,
/// the subgroup <|A|> is a complement; otherwise nothing.
std::optional<ResidueSet> canonical_complement(const ResidueSet& a);

}  // namespace cycfact
