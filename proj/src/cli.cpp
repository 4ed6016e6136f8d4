#include "cycfact/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cycfact/characters.hpp"
#include "cycfact/factorization.hpp"
#include "cycfact/report.hpp"
#include "cycfact/scans.hpp"
#include "cycfact/splitting.hpp"

namespace cycfact {

namespace {

using nlohmann::ordered_json;

std::string join_command(const std::vector<std::string>& args) {
    std::string out = "cycfact";
    for (const auto& a : args) {
        out.push_back(' ');
        out += a;
    }
    return out;
}

ordered_json json_i64_list(const std::vector<i64>& values) {
    ordered_json arr = ordered_json::array();
    for (i64 v : values) arr.push_back(v);
    return arr;
}

struct Emitter {
    std::string format = "json";
    std::ostream& out;

    // Scan reports support all three formats; everything else json/table only.
    int emit(const ReportEnvelope& env, const ScanReport* scan = nullptr) const {
        const OutputFormat f = output_format_from_string(format);
        switch (f) {
            case OutputFormat::json: out << emit_json(env); break;
            case OutputFormat::csv:
                if (!scan)
                    throw std::invalid_argument(
                        "csv output is only available for scan reports");
                out << emit_csv(*scan);
                break;
            case OutputFormat::table: out << emit_table(env); break;
        }
        return env.exit_code();
    }
};

// One key=value per line, '#' starts a comment.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto notspace = [](unsigned char c) { return !std::isspace(c); };
            s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
            s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
            return s;
        };
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line is not key=value: '" + line + "'");
        kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return kv;
}

struct ScanArgs {
    std::string target;
    std::string family;
    std::string omega, n, k;
    std::vector<std::string> filters;
    bool allow_tight = false;
    unsigned threads = 1;
    u32 limit = 256;
    std::string config_path;
};

ScanReport dispatch_scan(const std::string& target, const ScanSpec& spec) {
    if (target == "tail-congruence") return scan_tail_congruence(spec);
    if (target == "tail-congruence-gcd") return scan_tail_congruence_gcd_cases(spec);
    if (target == "swap") return scan_swap_congruence(spec);
    if (target == "majority-prefix") return scan_majority_prefix(spec);
    if (target == "periodicity") return scan_periodic_factor(spec);
    if (target == "subgroup-complement") return scan_subgroup_complement(spec);
    throw std::invalid_argument("unknown scan target '" + target + "'");
}

std::string default_target(ScanFamily family) {
    switch (family) {
        case ScanFamily::prefix_tail: return "tail-congruence";
        case ScanFamily::swap: return "swap";
        case ScanFamily::majority_prefix: return "majority-prefix";
        case ScanFamily::arbitrary: return "periodicity";
    }
    return "tail-congruence";
}

std::string default_family(const std::string& target) {
    if (target == "swap") return "swap";
    if (target == "majority-prefix") return "majority_prefix";
    if (target == "periodicity") return "arbitrary";
    return "prefix_tail";
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    const std::string command_echo = join_command(args);

    CLI::App app{"exact toolkit for cyclic-group factorizations and splittings"};
    app.require_subcommand(1);

    // ---- verify-fact ----------------------------------------------------
    struct {
        u32 omega = 0;
        std::string a, b;
    } vf;
    auto* vf_cmd = app.add_subcommand("verify-fact", "check that Z_omega = A + B exactly");
    vf_cmd->add_option("--omega", vf.omega, "group order")->required();
    vf_cmd->add_option("--a", vf.a, "set literal for A")->required();
    vf_cmd->add_option("--b", vf.b, "set literal for B")->required();

    // ---- complements -----------------------------------------------------
    struct {
        u32 omega = 0;
        std::string a;
        bool normalized_only = false;
        std::size_t max_results = 0;  // 0 = unlimited
        u32 limit = 256;
    } comp;
    auto* comp_cmd = app.add_subcommand("complements", "search all B with Z_omega = A + B");
    comp_cmd->add_option("--omega", comp.omega)->required();
    comp_cmd->add_option("--a", comp.a)->required();
    comp_cmd->add_flag("--normalized-only", comp.normalized_only,
                       "report only complements containing 0");
    comp_cmd->add_option("--max-results", comp.max_results);
    comp_cmd->add_option("--limit", comp.limit, "largest omega the search accepts");

    // ---- crs --------------------------------------------------------------
    struct {
        std::string a;
        u32 n = 0;
    } crs;
    auto* crs_cmd =
        app.add_subcommand("crs", "decide whether A is a complete residue system mod n");
    crs_cmd->add_option("--a", crs.a)->required();
    crs_cmd->add_option("--n", crs.n)->required();

    // ---- stabilizer --------------------------------------------------------
    struct {
        u32 omega = 0;
        std::string a;
    } stab;
    auto* stab_cmd = app.add_subcommand("stabilizer", "stable subgroup and coset structure of A");
    stab_cmd->add_option("--omega", stab.omega)->required();
    stab_cmd->add_option("--a", stab.a)->required();

    // ---- chi ----------------------------------------------------------------
    struct {
        u32 omega = 0;
        std::string a;
        u32 t = 0;
    } chi_args;
    auto* chi_cmd = app.add_subcommand("chi", "character sum chi_t(A) with exact zero test");
    chi_cmd->add_option("--omega", chi_args.omega)->required();
    chi_cmd->add_option("--a", chi_args.a)->required();
    chi_cmd->add_option("--t", chi_args.t)->required();

    // ---- annihilator ---------------------------------------------------------
    struct {
        u32 omega = 0;
        std::string a;
    } ann;
    auto* ann_cmd = app.add_subcommand("annihilator", "all t with chi_t(A) = 0");
    ann_cmd->add_option("--omega", ann.omega)->required();
    ann_cmd->add_option("--a", ann.a)->required();

    // ---- decompose -------------------------------------------------------------
    struct {
        u32 omega = 0;
        std::string h, k, a;
        u32 limit = 96;
    } dec;
    auto* dec_cmd = app.add_subcommand(
        "decompose", "tile A by H- and K-cosets and compare with annihilator inclusion");
    dec_cmd->set_help_flag("--help", "print help");  // frees -h for the subgroup option
    dec_cmd->add_option("--omega", dec.omega)->required();
    dec_cmd->add_option("--h", dec.h)->required();
    dec_cmd->add_option("--k", dec.k)->required();
    dec_cmd->add_option("--a", dec.a)->required();
    dec_cmd->add_option("--limit", dec.limit);

    // ---- split-verify ------------------------------------------------------------
    struct {
        u32 g = 0;
        std::string m, s;
    } sv;
    auto* sv_cmd = app.add_subcommand("split-verify", "check that Z_g \\ {0} = MS exactly");
    sv_cmd->add_option("--g", sv.g, "group order")->required();
    sv_cmd->add_option("--m", sv.m, "integer list of multipliers")->required();
    sv_cmd->add_option("--s", sv.s, "set literal for S")->required();

    // ---- split-search ---------------------------------------------------------------
    struct {
        u32 g = 0;
        std::string m;
        std::size_t max_results = 0;
        u32 limit = 10000;
    } ss;
    auto* ss_cmd = app.add_subcommand("split-search", "search all splitting sets for M");
    ss_cmd->add_option("--g", ss.g)->required();
    ss_cmd->add_option("--m", ss.m)->required();
    ss_cmd->add_option("--max-results", ss.max_results);
    ss_cmd->add_option("--limit", ss.limit);

    // ---- dlog-bridge -------------------------------------------------------------------
    struct {
        u64 p = 0;
        i64 base = 0;
        std::string m;
    } dl;
    auto* dl_cmd = app.add_subcommand(
        "dlog-bridge", "exponent set of M in base m and the splitting/factorization bridge");
    dl_cmd->add_option("--p", dl.p, "prime modulus")->required();
    dl_cmd->add_option("--base", dl.base, "base whose powers express M")->required();
    dl_cmd->add_option("--m", dl.m)->required();

    // ---- tightness ------------------------------------------------------------------------
    struct {
        u32 k = 0;
        u64 p = 0;
        i64 base = 0;
    } tn;
    auto* tn_cmd = app.add_subcommand(
        "tightness", "n = 2k splitting whose exponent set misses the residue system");
    tn_cmd->add_option("--k", tn.k)->required();
    tn_cmd->add_option("--p", tn.p)->required();
    tn_cmd->add_option("--base", tn.base)->required();

    // ---- scan -----------------------------------------------------------------------------
    ScanArgs sc;
    auto* sc_cmd = app.add_subcommand("scan", "exhaustive desk-scale family scan");
    auto* sc_target = sc_cmd->add_option("--target", sc.target,
                                         "tail-congruence | tail-congruence-gcd | swap | "
                                         "majority-prefix | periodicity | subgroup-complement");
    auto* sc_family = sc_cmd->add_option("--family", sc.family,
                                         "prefix_tail | swap | majority_prefix | arbitrary");
    auto* sc_omega = sc_cmd->add_option("--omega", sc.omega, "range, e.g. 5..60");
    auto* sc_n = sc_cmd->add_option("--n", sc.n, "range");
    auto* sc_k = sc_cmd->add_option("--k", sc.k, "range");
    auto* sc_filters = sc_cmd->add_option("--filters", sc.filters,
                                          "gcd-conditions, coprime-sizes, prime-power-order, "
                                          "pq-order")
                           ->delimiter(',');
    auto* sc_tight = sc_cmd->add_flag("--allow-tight", sc.allow_tight, "permit n = 2k families");
    auto* sc_threads = sc_cmd->add_option("--threads", sc.threads, "0 = hardware concurrency");
    auto* sc_limit = sc_cmd->add_option("--limit", sc.limit, "complement search bound");
    sc_cmd->add_option("--config", sc.config_path, "key=value file with the options above");

    std::string format = "json";
    for (auto* cmd : app.get_subcommands({}))
        cmd->add_option("--format", format, "json | csv | table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Emitter emitter{format, out};

    try {
        if (vf_cmd->parsed()) {
            const Modulus m(vf.omega);
            const ResidueSet a = parse_residue_set(vf.a, m);
            const ResidueSet b = parse_residue_set(vf.b, m);
            const bool holds = is_factorization(a, b);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = holds ? Verdict::confirmed : Verdict::refuted;
            env.payload["omega"] = vf.omega;
            env.payload["a"] = json_set(a);
            env.payload["b"] = json_set(b);
            env.payload["holds"] = holds;
            if (!holds) {
                const auto profile = sumset_profile(a, b);
                for (u32 g = 0; g < vf.omega; ++g) {
                    if (profile.multiplicity[g] != 1) {
                        ordered_json ce;
                        ce["g"] = g;
                        ce["multiplicity"] = profile.multiplicity[g];
                        env.counterexamples.push_back(ce);
                        break;  // smallest failing element is witness enough
                    }
                }
            }
            return emitter.emit(env);
        }

        if (comp_cmd->parsed()) {
            const Modulus m(comp.omega);
            const ResidueSet a = parse_residue_set(comp.a, m);
            ComplementSearchOptions opt;
            opt.normalized_only = comp.normalized_only;
            if (comp.max_results > 0) opt.max_results = comp.max_results;
            opt.omega_limit = comp.limit;
            const auto results = find_complements(a, opt);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = Verdict::value;
            env.payload["omega"] = comp.omega;
            env.payload["a"] = json_set(a);
            env.payload["normalized_only"] = comp.normalized_only;
            env.payload["count"] = results.size();
            ordered_json arr = ordered_json::array();
            for (const auto& b : results) arr.push_back(json_set(b));
            env.payload["complements"] = arr;
            return emitter.emit(env);
        }

        if (crs_cmd->parsed()) {
            const auto values = parse_integer_list(crs.a);
            const bool holds = is_complete_residue_system(values, crs.n);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = holds ? Verdict::confirmed : Verdict::refuted;
            env.payload["a"] = json_i64_list(values);
            env.payload["n"] = crs.n;
            env.payload["complete_residue_system"] = holds;
            if (!holds) {
                // witness: the first residue class hit twice
                std::vector<std::vector<i64>> classes(crs.n);
                for (i64 v : values) {
                    i64 r = v % static_cast<i64>(crs.n);
                    if (r < 0) r += crs.n;
                    classes[static_cast<std::size_t>(r)].push_back(v);
                }
                for (u32 r = 0; r < crs.n; ++r) {
                    if (classes[r].size() < 2) continue;
                    ordered_json ce;
                    ce["residue"] = r;
                    ce["values"] = json_i64_list(classes[r]);
                    env.counterexamples.push_back(ce);
                    break;
                }
            }
            return emitter.emit(env);
        }

        if (stab_cmd->parsed()) {
            const Modulus m(stab.omega);
            const ResidueSet a = parse_residue_set(stab.a, m);
            const PeriodicityReport rep = stabilizer(a);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = Verdict::value;
            env.payload["omega"] = stab.omega;
            env.payload["a"] = json_set(a);
            env.payload["stabilizer"] = json_set(rep.stabilizer);
            env.payload["is_periodic"] = rep.is_periodic;
            env.payload["coset_reps"] = json_set(rep.coset_reps);
            return emitter.emit(env);
        }

        if (chi_cmd->parsed()) {
            const Modulus m(chi_args.omega);
            const ResidueSet a = parse_residue_set(chi_args.a, m);
            if (chi_args.t >= chi_args.omega)
                throw std::invalid_argument("chi: t must lie in [0, omega)");
            const CycloElement x = chi_sum(a, CharacterIndex{chi_args.t, m});
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = Verdict::value;
            env.payload["omega"] = chi_args.omega;
            env.payload["a"] = json_set(a);
            env.payload["t"] = chi_args.t;
            env.payload["coefficients"] = x.coefficients();
            env.payload["is_zero"] = is_zero(x);
            return emitter.emit(env);
        }

        if (ann_cmd->parsed()) {
            const Modulus m(ann.omega);
            const ResidueSet a = parse_residue_set(ann.a, m);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = Verdict::value;
            env.payload["omega"] = ann.omega;
            env.payload["a"] = json_set(a);
            env.payload["annihilator"] = json_set(annihilator(a));
            return emitter.emit(env);
        }

        if (dec_cmd->parsed()) {
            const Modulus m(dec.omega);
            const ResidueSet h = parse_residue_set(dec.h, m);
            const ResidueSet k = parse_residue_set(dec.k, m);
            const ResidueSet a = parse_residue_set(dec.a, m);
            const bool inclusion = annihilator_inclusion(h, k, a);
            const auto decomposition = decompose_union(h, k, a, dec.limit);
            const bool agree = inclusion == decomposition.has_value();
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = agree ? Verdict::confirmed : Verdict::refuted;
            env.payload["omega"] = dec.omega;
            env.payload["h"] = json_set(h);
            env.payload["k"] = json_set(k);
            env.payload["a"] = json_set(a);
            env.payload["annihilator_inclusion"] = inclusion;
            if (decomposition) {
                ordered_json d;
                d["e"] = json_set(decomposition->h_reps);
                d["f"] = json_set(decomposition->k_reps);
                env.payload["decomposition"] = d;
            } else {
                env.payload["decomposition"] = nullptr;
            }
            env.payload["equivalence_holds"] = agree;
            if (!agree) {
                ordered_json ce;
                ce["a"] = json_set(a);
                ce["reason"] = "annihilator inclusion and coset tiling disagree";
                env.counterexamples.push_back(ce);
            }
            return emitter.emit(env);
        }

        if (sv_cmd->parsed()) {
            const Modulus g(sv.g);
            const MultiplierSet m = MultiplierSet::from_values(parse_integer_list(sv.m));
            const ResidueSet s = parse_residue_set(sv.s, g);
            const bool holds = is_splitting(m, s, g);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = holds ? Verdict::confirmed : Verdict::refuted;
            env.payload["g"] = sv.g;
            env.payload["m"] = json_i64_list(m.values());
            env.payload["s"] = json_set(s);
            env.payload["holds"] = holds;
            if (!holds) {
                // witness: the first element represented the wrong number of times
                std::vector<u32> count(sv.g, 0);
                for (u32 r : m.residues(sv.g))
                    s.for_each([&](u32 x) {
                        ++count[static_cast<u32>(static_cast<u64>(r) * x % sv.g)];
                    });
                for (u32 e = 0; e < sv.g; ++e) {
                    const u32 expected = e == 0 ? 0 : 1;
                    if (count[e] == expected) continue;
                    ordered_json ce;
                    ce["element"] = e;
                    ce["representations"] = count[e];
                    env.counterexamples.push_back(ce);
                    break;
                }
            }
            return emitter.emit(env);
        }

        if (ss_cmd->parsed()) {
            const Modulus g(ss.g);
            const MultiplierSet m = MultiplierSet::from_values(parse_integer_list(ss.m));
            SplitSearchOptions opt;
            if (ss.max_results > 0) opt.max_results = ss.max_results;
            opt.modulus_limit = ss.limit;
            const auto results = search_splitting_sets(m, g, opt);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = Verdict::value;
            env.payload["g"] = ss.g;
            env.payload["m"] = json_i64_list(m.values());
            env.payload["count"] = results.size();
            ordered_json arr = ordered_json::array();
            for (const auto& s : results) arr.push_back(json_set(s));
            env.payload["splitting_sets"] = arr;
            return emitter.emit(env);
        }

        if (dl_cmd->parsed()) {
            const MultiplierSet m = MultiplierSet::from_values(parse_integer_list(dl.m));
            const auto exponents = discrete_log_set(m, dl.base, dl.p);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.payload["p"] = dl.p;
            env.payload["base"] = dl.base;
            env.payload["m"] = json_i64_list(m.values());
            if (!exponents) {
                env.verdict = Verdict::value;
                env.payload["exponent_set"] = nullptr;
                return emitter.emit(env);
            }
            const u32 ord = exponents->omega();
            env.payload["order"] = ord;
            env.payload["exponent_set"] = json_set(*exponents);

            // the bridge: M splits <base> iff the exponent set factors Z_ord
            ResidueSet subgroup{Modulus(dl.p)};
            {
                u64 x = 1 % dl.p;
                const u32 base_res = static_cast<u32>(((dl.base % static_cast<i64>(dl.p)) +
                                                       static_cast<i64>(dl.p)) %
                                                      static_cast<i64>(dl.p));
                do {
                    subgroup.insert(static_cast<u32>(x));
                    x = x * base_res % dl.p;
                } while (x != 1);
            }
            SplitSearchOptions sopt;
            sopt.max_results = 1;
            const bool splits = !search_splitting_sets_within(m, subgroup, Modulus(dl.p), sopt)
                                     .empty();
            ComplementSearchOptions copt;
            copt.max_results = 1;
            const bool complements_exist = !find_complements(*exponents, copt).empty();
            env.payload["splits_subgroup"] = splits;
            env.payload["exponent_set_has_complement"] = complements_exist;
            env.payload["bridge_agrees"] = splits == complements_exist;
            env.verdict = splits == complements_exist ? Verdict::confirmed : Verdict::refuted;
            return emitter.emit(env);
        }

        if (tn_cmd->parsed()) {
            const TightnessResult result = tightness_construction(tn.k, tn.p, tn.base);
            ReportEnvelope env;
            env.command_echo = command_echo;
            env.verdict = result.exponents_crs_mod_n ? Verdict::refuted : Verdict::confirmed;
            env.payload["k"] = tn.k;
            env.payload["p"] = tn.p;
            env.payload["base"] = tn.base;
            env.payload["m"] = json_i64_list(result.witness.m.values());
            env.payload["s"] = json_set(result.witness.s);
            env.payload["splitting_holds"] = true;
            env.payload["order"] = result.exponent_set.omega();
            env.payload["exponent_set"] = json_set(result.exponent_set);
            env.payload["exponents_crs_mod_n"] = result.exponents_crs_mod_n;
            if (result.exponents_crs_mod_n) {
                ordered_json ce;
                ce["exponent_set"] = json_set(result.exponent_set);
                ce["reason"] = "exponent set unexpectedly forms a complete residue system";
                env.counterexamples.push_back(ce);
            }
            return emitter.emit(env);
        }

        if (sc_cmd->parsed()) {
            if (!sc.config_path.empty()) {
                const auto kv = load_config(sc.config_path);
                const auto want = [&](const char* key, const CLI::Option* opt) {
                    return kv.count(key) && opt->count() == 0;
                };
                if (want("target", sc_target)) sc.target = kv.at("target");
                if (want("family", sc_family)) sc.family = kv.at("family");
                if (want("omega", sc_omega)) sc.omega = kv.at("omega");
                if (want("n", sc_n)) sc.n = kv.at("n");
                if (want("k", sc_k)) sc.k = kv.at("k");
                if (want("allow_tight", sc_tight))
                    sc.allow_tight = kv.at("allow_tight") == "true" || kv.at("allow_tight") == "1";
                if (want("threads", sc_threads))
                    sc.threads = static_cast<unsigned>(std::stoul(kv.at("threads")));
                if (want("limit", sc_limit))
                    sc.limit = static_cast<u32>(std::stoul(kv.at("limit")));
                if (want("filters", sc_filters)) {
                    sc.filters.clear();
                    std::istringstream split(kv.at("filters"));
                    std::string item;
                    while (std::getline(split, item, ','))
                        if (!item.empty()) sc.filters.push_back(item);
                }
            }
            if (sc.target.empty() && sc.family.empty())
                throw std::invalid_argument("scan: provide --target or --family");
            if (sc.family.empty()) sc.family = default_family(sc.target);
            ScanSpec spec;
            spec.family = scan_family_from_string(sc.family);
            if (sc.target.empty()) sc.target = default_target(spec.family);
            if (!sc.omega.empty()) spec.omega_range = parse_range(sc.omega);
            if (!sc.n.empty()) spec.n_range = parse_range(sc.n);
            if (!sc.k.empty()) spec.k_range = parse_range(sc.k);
            for (const auto& f : sc.filters) spec.filters.push_back(scan_filter_from_string(f));
            std::sort(spec.filters.begin(), spec.filters.end());
            spec.filters.erase(std::unique(spec.filters.begin(), spec.filters.end()),
                               spec.filters.end());
            spec.allow_tight = sc.allow_tight;
            spec.threads = sc.threads;
            spec.search_limit = sc.limit;
            const ScanReport report = dispatch_scan(sc.target, spec);
            const ReportEnvelope env = envelope_for_scan(report, command_echo);
            return emitter.emit(env, &report);
        }

        err << "error: no verb dispatched\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cycfact
