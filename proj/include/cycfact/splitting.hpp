#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "cycfact/cyclic_core.hpp"

namespace cycfact {

/// A finite set of nonzero integer multipliers, sorted, without duplicates.
/// Negative entries act through their residue: m*s means s added m times.
class MultiplierSet {
public:
    static MultiplierSet from_values(std::vector<i64> values);

    const std::vector<i64>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool contains(i64 v) const;

    /// Each multiplier reduced into [0, modulus).
    std::vector<u32> residues(u32 modulus) const;

private:
    explicit MultiplierSet(std::vector<i64> values) : values_(std::move(values)) {}
    std::vector<i64> values_;
};

/// True iff {m*s : m in M, s in S} covers every nonzero element of Z_g
/// exactly once and never hits 0.
bool is_splitting(const MultiplierSet& m, const ResidueSet& s, Modulus g);

struct SplitSearchOptions {
    std::size_t max_results = std::numeric_limits<std::size_t>::max();
    u32 modulus_limit = 10000;
};

/// All splitting sets S with Z_g \ {0} = MS, by backtracking on the smallest
/// unrepresented element.  Empty when |M| does not divide g - 1.
std::vector<ResidueSet> search_splitting_sets(const MultiplierSet& m, Modulus g,
                                              const SplitSearchOptions& opt = {});

/// Splitting sets S contained in `universe` with M*S = universe exactly
/// (used for splittings of a multiplicative subgroup; 0 must not be in it).
std::vector<ResidueSet> search_splitting_sets_within(const MultiplierSet& m,
                                                     const ResidueSet& universe, Modulus g,
                                                     const SplitSearchOptions& opt = {});

/// Every multiplier coprime to the group order.
bool is_nonsingular(const MultiplierSet& m, Modulus g);

/// If some prime q divides every multiplier other than 1 and also divides
/// the group order, M cannot split the group.
struct ObstructionVerdict {
    bool obstructed;
    u64 prime;  // the witness q when obstructed, otherwise 0
};
ObstructionVerdict check_common_divisor_obstruction(const MultiplierSet& m, Modulus g);

/// Checks "M splits Z_g nonsingularly iff M splits Z_p for each prime p | g"
/// on a concrete instance, by running both searches.
struct ReductionVerdict {
    bool splits_whole;
    std::vector<std::pair<u64, bool>> per_prime;
    bool agree;
};
ReductionVerdict nonsingular_reduction_check(const MultiplierSet& m, Modulus g,
                                             const SplitSearchOptions& opt = {});

/// Checks "M splits Z_p iff M splits <M>" on a concrete instance, where <M>
/// is the multiplicative closure of M mod p.
struct SubgroupRestrictionVerdict {
    ResidueSet generated;
    bool splits_group;
    bool splits_generated;
    bool agree;
};
SubgroupRestrictionVerdict subgroup_restriction_check(const MultiplierSet& m, u64 p,
                                                      const SplitSearchOptions& opt = {});

/// Exponents of the multipliers in base m mod p: A = {e : m^e = m_i (mod p)},
/// a subset of Z_{ord_p(m)}.  Nothing if some multiplier is outside <m> or two
/// multipliers coincide mod p.
std::optional<ResidueSet> discrete_log_set(const MultiplierSet& m, i64 base, u64 p);

/// {m^0, ..., m^{n-k-1}} u {m^i : i in tail_exponents}, as exact integers.
MultiplierSet prefix_multiplier_family(i64 m, u32 n, u32 k, const std::vector<u32>& tail_exponents);

/// A verified splitting Z_g \ {0} = MS.
struct SplittingWitness {
    Modulus g;
    MultiplierSet m;
    ResidueSet s;

    static std::optional<SplittingWitness> make(Modulus g, MultiplierSet m, ResidueSet s) {
        if (!is_splitting(m, s, g)) return std::nullopt;
        return SplittingWitness{g, std::move(m), std::move(s)};
    }
};

/// The boundary construction at n = 2k: M = {m^0..m^{k-1}, m^{2k}..m^{3k-1}}
/// splits Z_p with S = union of coset translates of <m^{4k}> u m^k <m^{4k}>,
/// yet the exponent set fails to be a complete residue system mod n.
/// Requires 4k | ord_p(m).
struct TightnessResult {
    SplittingWitness witness;
    ResidueSet exponent_set;    // over Z_{ord_p(m)}
    bool exponents_crs_mod_n;   // expected false
};
TightnessResult tightness_construction(u32 k, u64 p, i64 m);

}  // namespace cycfact
