#include "cycfact/scans.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "cycfact/enumeration.hpp"

namespace cycfact {

const char* to_string(ScanFamily f) {
    switch (f) {
        case ScanFamily::prefix_tail: return "prefix_tail";
        case ScanFamily::swap: return "swap";
        case ScanFamily::majority_prefix: return "majority_prefix";
        case ScanFamily::arbitrary: return "arbitrary";
    }
    return "?";
}

const char* to_string(ScanFilter f) {
    switch (f) {
        case ScanFilter::none: return "none";
        case ScanFilter::gcd_conditions: return "gcd-conditions";
        case ScanFilter::coprime_sizes: return "coprime-sizes";
        case ScanFilter::prime_power_order: return "prime-power-order";
        case ScanFilter::pq_order: return "pq-order";
    }
    return "?";
}

const char* to_string(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::confirmed: return "confirmed";
        case ScanVerdict::refuted: return "refuted";
        case ScanVerdict::exploratory: return "exploratory";
    }
    return "?";
}

ScanFamily scan_family_from_string(const std::string& s) {
    if (s == "prefix_tail") return ScanFamily::prefix_tail;
    if (s == "swap") return ScanFamily::swap;
    if (s == "majority_prefix") return ScanFamily::majority_prefix;
    if (s == "arbitrary") return ScanFamily::arbitrary;
    throw std::invalid_argument("unknown scan family '" + s + "'");
}

ScanFilter scan_filter_from_string(const std::string& s) {
    if (s == "none") return ScanFilter::none;
    if (s == "gcd-conditions") return ScanFilter::gcd_conditions;
    if (s == "coprime-sizes") return ScanFilter::coprime_sizes;
    if (s == "prime-power-order") return ScanFilter::prime_power_order;
    if (s == "pq-order") return ScanFilter::pq_order;
    throw std::invalid_argument("unknown scan filter '" + s + "'");
}

Range parse_range(std::string_view text) {
    std::string cleaned;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
    const auto parse_u32 = [](std::string_view tok) {
        u32 v = 0;
        const auto* last = tok.data() + tok.size();
        auto [ptr, ec] = std::from_chars(tok.data(), last, v);
        if (ec != std::errc{} || ptr != last)
            throw std::invalid_argument("malformed range literal '" + std::string(tok) + "'");
        return v;
    };
    const std::size_t dots = cleaned.find("..");
    if (dots == std::string::npos) {
        const u32 v = parse_u32(cleaned);
        return Range{v, v};
    }
    const u32 lo = parse_u32(std::string_view(cleaned).substr(0, dots));
    const u32 hi = parse_u32(std::string_view(cleaned).substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("range lower bound exceeds upper bound");
    return Range{lo, hi};
}

void ScanSpec::validate() const {
    if (omega_range.lo > omega_range.hi || n_range.lo > n_range.hi || k_range.lo > k_range.hi)
        throw std::invalid_argument("scan ranges must satisfy lo <= hi");
    if (omega_range.lo < 1 || n_range.lo < 1)
        throw std::invalid_argument("omega and n must be >= 1");
    if (omega_range.hi > search_limit)
        throw BoundError("scan: omega range exceeds the complement search limit " +
                         std::to_string(search_limit));
}

bool ScanSpec::has_filter(ScanFilter f) const {
    return std::find(filters.begin(), filters.end(), f) != filters.end();
}

namespace {

struct CellWork {
    u32 omega, n, k;
};

struct CellOutcome {
    CellStat stat;
    std::vector<Counterexample> counterexamples;
    std::vector<Counterexample> exploratory;
    std::vector<WitnessPair> witnesses;
    u64 holds = 0, fails = 0, pairs_not_covered = 0;
};

template <class Fn>
void run_indexed(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned nthreads = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Fold per-cell outcomes into the report in canonical cell order.
void fold_outcomes(ScanReport& report, std::vector<CellOutcome>& outcomes) {
    for (auto& oc : outcomes) {
        report.instances_checked += oc.stat.instances;
        report.direct_factor_count += oc.stat.direct_factors;
        report.holds_count += oc.holds;
        report.fails_count += oc.fails;
        report.pairs_not_covered += oc.pairs_not_covered;
        report.cells.push_back(oc.stat);
        for (auto& ce : oc.counterexamples) report.counterexamples.push_back(std::move(ce));
        for (auto& ce : oc.exploratory)
            if (report.exploratory_fails.size() < report.spec.exploratory_sample_cap)
                report.exploratory_fails.push_back(std::move(ce));
        for (auto& w : oc.witnesses) report.witnesses.push_back(std::move(w));
    }
}

Counterexample make_counterexample(u32 omega, u32 n, u32 k, const ResidueSet& a,
                                   const ResidueSet& b, std::string reason) {
    if (!is_factorization(a, b))
        throw std::logic_error("counterexample failed re-verification");
    return Counterexample{omega, n, k, a.elements(), b.elements(), std::move(reason)};
}

ResidueSet build_prefix_tail(Modulus m, u32 n, u32 k, const std::vector<u32>& tail) {
    ResidueSet a(m);
    for (u32 v = 0; v + k < n; ++v) a.insert(v);
    for (u32 t : tail) a.insert(t);
    return a;
}

std::vector<u32> sorted_residues(const std::vector<u32>& values, u32 n) {
    std::vector<u32> out;
    out.reserve(values.size());
    for (u32 v : values) out.push_back(v % n);
    std::sort(out.begin(), out.end());
    return out;
}

bool gcd_side_conditions_hold(u32 n, u32 b_size) {
    const u64 d = std::gcd<u64>(n, b_size);
    const auto sig = factorize_integer(d);
    if (sig.distinct_prime_count() <= 1) return true;
    return sig.distinct_prime_count() == 2 && sig.total_prime_count() == 2 &&
           std::gcd<u64>(d, b_size / d) == 1;
}

ScanReport run_tail_scan(const ScanSpec& spec, const char* name, bool gcd_cases) {
    spec.validate();
    if (spec.family != ScanFamily::prefix_tail)
        throw std::invalid_argument(std::string(name) + ": family must be prefix_tail");
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.scan_name = name;
    report.spec = spec;

    std::vector<CellWork> cells;
    for (u32 omega = spec.omega_range.lo; omega <= spec.omega_range.hi; ++omega)
        for (u32 n = spec.n_range.lo; n <= spec.n_range.hi; ++n)
            for (u32 k = spec.k_range.lo; k <= spec.k_range.hi; ++k) {
                if (n < k + 1) continue;                       // prefix must be nonempty
                if (!spec.allow_tight && n < 2 * k + 1) continue;
                if (omega % n != 0) {
                    ++report.size_obstructed;                  // |A| must divide omega
                    continue;
                }
                if (gcd_cases && !gcd_side_conditions_hold(n, omega / n)) {
                    ++report.hypothesis_filtered;
                    continue;
                }
                if (spec.has_filter(ScanFilter::coprime_sizes) &&
                    std::gcd(n, omega / n) != 1) {
                    ++report.hypothesis_filtered;
                    continue;
                }
                cells.push_back(CellWork{omega, n, k});
            }

    std::vector<CellOutcome> outcomes(cells.size());
    run_indexed(cells.size(), spec.threads, [&](std::size_t ci) {
        const u32 omega = cells[ci].omega, n = cells[ci].n, k = cells[ci].k;
        CellOutcome oc;
        oc.stat = CellStat{omega, n, k, 0, 0, 0};
        const Modulus m(omega);
        std::vector<u32> expected;
        for (u32 r = n - k; r < n; ++r) expected.push_back(r);
        ComplementSearchOptions existence;
        existence.max_results = 1;
        existence.omega_limit = spec.search_limit;
        for_each_combination(n - k, omega - 1, k, [&](const std::vector<u32>& tail) {
            const ResidueSet a = build_prefix_tail(m, n, k, tail);
            ++oc.stat.instances;
            const auto comps = find_complements(a, existence);
            if (comps.empty()) return;
            ++oc.stat.direct_factors;
            if (sorted_residues(tail, n) == expected) {
                // With the congruence in hand A is a complete residue
                // system mod n, so <n> must complement it.
                if (!canonical_complement(a).has_value())
                    throw std::logic_error("tail scan: canonical complement missing");
            } else {
                ++oc.stat.counterexamples;
                oc.counterexamples.push_back(make_counterexample(
                    omega, n, k, a, comps[0],
                    "tail residues differ from {n-k,...,n-1} (mod n)"));
            }
            if (spec.collect_witnesses)
                oc.witnesses.push_back(WitnessPair{omega, a.elements(), comps[0].elements()});
        });
        outcomes[ci] = std::move(oc);
    });
    fold_outcomes(report, outcomes);
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

}  // namespace

ScanReport scan_tail_congruence(const ScanSpec& spec) {
    return run_tail_scan(spec, "tail-congruence",
                         spec.has_filter(ScanFilter::gcd_conditions));
}

ScanReport scan_tail_congruence_gcd_cases(const ScanSpec& spec) {
    return run_tail_scan(spec, "tail-congruence-gcd", true);
}

ScanReport scan_swap_congruence(const ScanSpec& spec) {
    spec.validate();
    if (spec.family != ScanFamily::swap)
        throw std::invalid_argument("swap-congruence: family must be swap");
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.scan_name = "swap-congruence";
    report.spec = spec;

    std::vector<CellWork> cells;
    for (u32 omega = spec.omega_range.lo; omega <= spec.omega_range.hi; ++omega)
        for (u32 n = spec.n_range.lo; n <= spec.n_range.hi; ++n) {
            if (n < 3) continue;  // the swap statement starts at n = 3
            if (omega % n != 0) {
                ++report.size_obstructed;
                continue;
            }
            cells.push_back(CellWork{omega, n, 0});
        }

    std::vector<CellOutcome> outcomes(cells.size());
    run_indexed(cells.size(), spec.threads, [&](std::size_t ci) {
        const u32 omega = cells[ci].omega, n = cells[ci].n;
        CellOutcome oc;
        oc.stat = CellStat{omega, n, 0, 0, 0, 0};
        const Modulus m(omega);
        ComplementSearchOptions existence;
        existence.max_results = 1;
        existence.omega_limit = spec.search_limit;
        for (u32 i = 0; i < n; ++i) {
            for (u32 j = n; j < omega; ++j) {
                ResidueSet a(m);
                for (u32 v = 0; v < n; ++v)
                    if (v != i) a.insert(v);
                a.insert(j);
                ++oc.stat.instances;
                const auto comps = find_complements(a, existence);
                if (comps.empty()) continue;
                ++oc.stat.direct_factors;
                if (j % n != i % n) {
                    ++oc.stat.counterexamples;
                    oc.counterexamples.push_back(make_counterexample(
                        omega, n, 0, a, comps[0], "replacement j not congruent to i (mod n)"));
                }
                if (spec.collect_witnesses)
                    oc.witnesses.push_back(
                        WitnessPair{omega, a.elements(), comps[0].elements()});
            }
        }
        outcomes[ci] = std::move(oc);
    });
    fold_outcomes(report, outcomes);
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

ScanReport scan_majority_prefix(const ScanSpec& spec) {
    spec.validate();
    if (spec.family != ScanFamily::majority_prefix)
        throw std::invalid_argument("majority-prefix: family must be majority_prefix");
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.scan_name = "majority-prefix";
    report.spec = spec;
    report.exploratory = true;

    std::vector<CellWork> cells;
    for (u32 omega = spec.omega_range.lo; omega <= spec.omega_range.hi; ++omega)
        for (u32 n = spec.n_range.lo; n <= spec.n_range.hi; ++n) {
            if (omega % n != 0) {
                ++report.size_obstructed;
                continue;
            }
            cells.push_back(CellWork{omega, n, 0});
        }

    std::vector<CellOutcome> outcomes(cells.size());
    run_indexed(cells.size(), spec.threads, [&](std::size_t ci) {
        const u32 omega = cells[ci].omega, n = cells[ci].n;
        CellOutcome oc;
        oc.stat = CellStat{omega, n, 0, 0, 0, 0};
        const Modulus m(omega);
        const u32 threshold = (n + 2) / 2;  // ceil((n+1)/2)
        ComplementSearchOptions existence;
        existence.max_results = 1;
        existence.omega_limit = spec.search_limit;
        for (u32 q = threshold; q <= n; ++q) {
            const u32 rest = n - q;
            for_each_combination(0, n - 1, q, [&](const std::vector<u32>& head) {
                for_each_combination(n, omega - 1, rest, [&](const std::vector<u32>& tail) {
                    ResidueSet a(m);
                    for (u32 v : head) a.insert(v);
                    for (u32 v : tail) a.insert(v);
                    ++oc.stat.instances;
                    const auto comps = find_complements(a, existence);
                    if (comps.empty()) return;
                    ++oc.stat.direct_factors;
                    if (is_complete_residue_system(a, n)) {
                        ++oc.holds;
                    } else {
                        ++oc.fails;
                        if (oc.exploratory.size() < spec.exploratory_sample_cap)
                            oc.exploratory.push_back(make_counterexample(
                                omega, n, 0, a, comps[0],
                                "direct factor is not a complete residue system mod n"));
                    }
                });
            });
        }
        outcomes[ci] = std::move(oc);
    });
    fold_outcomes(report, outcomes);
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

namespace {

// Prime power, or a product of two distinct primes.
bool factor_order_shape(u32 size) {
    const auto sig = factorize_integer(size);
    if (sig.distinct_prime_count() <= 1) return true;
    return sig.distinct_prime_count() == 2 && sig.total_prime_count() == 2;
}

}  // namespace

ScanReport scan_periodic_factor(const ScanSpec& spec) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.scan_name = "periodic-factor";
    report.spec = spec;

    std::vector<CellWork> cells;
    for (u32 omega = spec.omega_range.lo; omega <= spec.omega_range.hi; ++omega) {
        if (omega == 1) {
            ++report.hypothesis_filtered;  // no nonzero period exists in Z_1
            continue;
        }
        const u32 mu = count_distinct_prime_divisors(omega);
        if (spec.has_filter(ScanFilter::prime_power_order) && mu != 1) {
            ++report.hypothesis_filtered;
            continue;
        }
        if (spec.has_filter(ScanFilter::pq_order) && mu != 2) {
            ++report.hypothesis_filtered;
            continue;
        }
        for (u32 n = spec.n_range.lo; n <= spec.n_range.hi; ++n) {
            if (n > omega || omega % n != 0) {
                ++report.size_obstructed;
                continue;
            }
            cells.push_back(CellWork{omega, n, 0});
        }
    }

    std::vector<CellOutcome> outcomes(cells.size());
    run_indexed(cells.size(), spec.threads, [&](std::size_t ci) {
        const u32 omega = cells[ci].omega, n = cells[ci].n;
        CellOutcome oc;
        oc.stat = CellStat{omega, n, 0, 0, 0, 0};
        const Modulus m(omega);
        const auto sig = factorize_integer(omega);
        const u32 mu = sig.distinct_prime_count();
        const u32 nu = sig.total_prime_count();
        const bool prime_power_order = mu == 1;
        const bool p_power_times_q =
            mu == 2 && (sig.factors[0].second == 1 || sig.factors[1].second == 1);
        const bool nu_in_window = nu >= 2 && nu <= 4;
        const bool whole_group_covered = prime_power_order || p_power_times_q || nu_in_window;
        const bool a_shape = factor_order_shape(n);
        const bool b_shape = factor_order_shape(omega / n);
        ComplementSearchOptions all_normalized;
        all_normalized.normalized_only = true;
        all_normalized.omega_limit = spec.search_limit;
        for_each_combination(1, omega - 1, n - 1, [&](const std::vector<u32>& rest) {
            ResidueSet a(m);
            a.insert(0);
            for (u32 v : rest) a.insert(v);
            const auto comps = find_complements(a, all_normalized);
            if (comps.empty()) return;
            ++oc.stat.direct_factors;
            const bool a_periodic = stabilizer(a).is_periodic;
            for (const ResidueSet& b : comps) {
                ++oc.stat.instances;
                if (!whole_group_covered && !(a_shape && b_shape)) {
                    ++oc.pairs_not_covered;
                    continue;
                }
                if (!a_periodic && !stabilizer(b).is_periodic) {
                    ++oc.stat.counterexamples;
                    oc.counterexamples.push_back(
                        make_counterexample(omega, n, 0, a, b, "no factor is periodic"));
                }
            }
        });
        outcomes[ci] = std::move(oc);
    });
    fold_outcomes(report, outcomes);
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

ScanReport scan_subgroup_complement(const ScanSpec& spec) {
    spec.validate();
    if (spec.family != ScanFamily::prefix_tail)
        throw std::invalid_argument("subgroup-complement: family must be prefix_tail");
    const auto start = std::chrono::steady_clock::now();
    ScanReport report;
    report.scan_name = "subgroup-complement";
    report.spec = spec;

    std::vector<CellWork> cells;
    for (u32 omega = spec.omega_range.lo; omega <= spec.omega_range.hi; ++omega)
        for (u32 n = spec.n_range.lo; n <= spec.n_range.hi; ++n)
            for (u32 k = spec.k_range.lo; k <= spec.k_range.hi; ++k) {
                if (n < 2 * k + 1) continue;  // the statement needs n >= 2k+1
                if (omega % n != 0) {
                    ++report.size_obstructed;
                    continue;
                }
                cells.push_back(CellWork{omega, n, k});
            }

    std::vector<CellOutcome> outcomes(cells.size());
    run_indexed(cells.size(), spec.threads, [&](std::size_t ci) {
        const u32 omega = cells[ci].omega, n = cells[ci].n, k = cells[ci].k;
        CellOutcome oc;
        oc.stat = CellStat{omega, n, k, 0, 0, 0};
        const Modulus m(omega);
        const u32 b_size = omega / n;
        const u32 nu_omega = count_prime_divisors(omega);
        const auto b_sig = factorize_integer(b_size);
        const bool nu_window = nu_omega >= 2 && nu_omega <= 4;
        const bool b_prime_power = b_sig.distinct_prime_count() <= 1;
        const bool b_pq_shape =
            b_sig.distinct_prime_count() == 2 && b_sig.total_prime_count() == 2;
        const ResidueSet subgroup_n = cyclic_subgroup(n, m);
        ComplementSearchOptions all_normalized;
        all_normalized.normalized_only = true;
        all_normalized.omega_limit = spec.search_limit;
        for_each_combination(n - k, omega - 1, k, [&](const std::vector<u32>& tail) {
            const ResidueSet a = build_prefix_tail(m, n, k, tail);
            const auto comps = find_complements(a, all_normalized);
            if (comps.empty()) return;
            ++oc.stat.direct_factors;
            for (const ResidueSet& b : comps) {
                ++oc.stat.instances;
                const bool qualifies =
                    nu_window || b_prime_power || (b_pq_shape && stabilizer(b).is_periodic);
                if (!qualifies) {
                    ++oc.pairs_not_covered;
                    continue;
                }
                if (!is_complete_residue_system(a, n)) {
                    ++oc.stat.counterexamples;
                    oc.counterexamples.push_back(make_counterexample(
                        omega, n, k, a, b, "factor is not a complete residue system mod n"));
                } else if (!(b == subgroup_n)) {
                    ++oc.stat.counterexamples;
                    oc.counterexamples.push_back(make_counterexample(
                        omega, n, k, a, b, "normalized complement differs from <n>"));
                }
            }
        });
        outcomes[ci] = std::move(oc);
    });
    fold_outcomes(report, outcomes);
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

}  // namespace cycfact
