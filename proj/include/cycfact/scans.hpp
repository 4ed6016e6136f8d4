#pragma once

#include <string>
#include <vector>

#include "cycfact/cyclic_core.hpp"
#include "cycfact/factorization.hpp"

namespace cycfact {

enum class ScanFamily { prefix_tail, swap, majority_prefix, arbitrary };
enum class ScanFilter { none, gcd_conditions, coprime_sizes, prime_power_order, pq_order };

const char* to_string(ScanFamily f);
const char* to_string(ScanFilter f);
ScanFamily scan_family_from_string(const std::string& s);
ScanFilter scan_filter_from_string(const std::string& s);

/// Inclusive integer range.
struct Range {
    u32 lo = 1;
    u32 hi = 1;
};
Range parse_range(std::string_view text);  // "<int>" or "<int>..<int>"

struct ScanSpec {
    ScanFamily family = ScanFamily::prefix_tail;
    Range omega_range{1, 60};
    Range n_range{1, 8};
    Range k_range{1, 1};
    std::vector<ScanFilter> filters;  // sorted, deduplicated by validate()
    bool allow_tight = false;         // permit n = 2k in prefix-tail families
    bool collect_witnesses = false;   // record every factorization found
    unsigned threads = 1;             // 0 = hardware concurrency
    u32 search_limit = 256;           // bound handed to find_complements
    std::size_t exploratory_sample_cap = 50;

    void validate() const;
    bool has_filter(ScanFilter f) const;
};

struct Counterexample {
    u32 omega = 0, n = 0, k = 0;
    std::vector<u32> a_elements;
    std::vector<u32> b_elements;  // a verifying complement
    std::string reason;
};

struct CellStat {
    u32 omega = 0, n = 0, k = 0;
    u64 instances = 0;
    u64 direct_factors = 0;
    u64 counterexamples = 0;
};

struct WitnessPair {
    u32 omega = 0;
    std::vector<u32> a_elements;
    std::vector<u32> b_elements;
};

enum class ScanVerdict { confirmed, refuted, exploratory };
const char* to_string(ScanVerdict v);

struct ScanReport {
    std::string scan_name;
    ScanSpec spec;
    u64 instances_checked = 0;
    u64 direct_factor_count = 0;
    u64 size_obstructed = 0;      // (omega, n, k) cells skipped because n does not divide omega
    u64 hypothesis_filtered = 0;  // cells skipped by a filter's side conditions
    u64 pairs_not_covered = 0;    // periodicity pairs outside every checkable shape
    u64 holds_count = 0;          // exploratory: property held
    u64 fails_count = 0;          // exploratory: property failed
    std::vector<CellStat> cells;
    std::vector<Counterexample> counterexamples;
    std::vector<Counterexample> exploratory_fails;  // capped sample
    std::vector<WitnessPair> witnesses;
    i64 elapsed_ms = 0;
    bool exploratory = false;

    ScanVerdict verdict() const {
        if (!counterexamples.empty()) return ScanVerdict::refuted;
        return exploratory ? ScanVerdict::exploratory : ScanVerdict::confirmed;
    }
};

/// For every A = [0, n-k-1] u tail that is a direct factor of Z_omega,
/// checks tail = {n-k, ..., n-1} (mod n) as a multiset.
ScanReport scan_tail_congruence(const ScanSpec& spec);

/// Same family restricted to (n, |B|) meeting the gcd side conditions:
/// gcd(n, omega/n) has at most one prime divisor, or equals pq with
/// gcd(pq, (omega/n)/pq) = 1.
ScanReport scan_tail_congruence_gcd_cases(const ScanSpec& spec);

/// For every A = [0, n-1] \ {i} u {j} that is a direct factor, checks
/// j = i (mod n).
ScanReport scan_swap_congruence(const ScanSpec& spec);

/// Exploratory: for direct factors with |A n [0, n-1]| >= ceil((n+1)/2),
/// tallies whether A is a complete residue system mod n.  Never asserts.
ScanReport scan_majority_prefix(const ScanSpec& spec);

/// For every factorization whose shape falls under a periodicity statement
/// (prime-power order, p^e q order, 2 <= nu <= 4, or both factor orders a
/// prime power or pq), asserts some factor has a nontrivial stabilizer.
ScanReport scan_periodic_factor(const ScanSpec& spec);

/// For prefix-tail factorizations with a qualifying complement (small nu(omega),
/// prime-power |B|, or periodic |B| = pq), asserts A is a complete residue
/// system mod n and the normalized complement is exactly <n>.
ScanReport scan_subgroup_complement(const ScanSpec& spec);

}  // namespace cycfact
