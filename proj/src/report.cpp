#include "cycfact/report.hpp"

#include <sstream>

namespace cycfact {

using nlohmann::ordered_json;

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::confirmed: return "confirmed";
        case Verdict::refuted: return "refuted";
        case Verdict::exploratory: return "exploratory";
        case Verdict::value: return "value";
    }
    return "?";
}

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "table") return OutputFormat::table;
    throw std::invalid_argument("unknown output format '" + s + "'");
}

ordered_json to_json(const ReportEnvelope& env) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["command"] = env.command_echo;
    j["verdict"] = to_string(env.verdict);
    j["payload"] = env.payload;
    j["counterexamples"] = env.counterexamples;
    return j;
}

std::string emit_json(const ReportEnvelope& env) { return to_json(env).dump(2) + "\n"; }

ordered_json json_set(const ResidueSet& s) {
    ordered_json arr = ordered_json::array();
    s.for_each([&](u32 g) { arr.push_back(g); });
    return arr;
}

ordered_json json_counterexample(const Counterexample& ce) {
    ordered_json j;
    j["omega"] = ce.omega;
    j["n"] = ce.n;
    j["k"] = ce.k;
    j["a"] = ce.a_elements;
    j["b"] = ce.b_elements;
    j["reason"] = ce.reason;
    return j;
}

ordered_json json_scan_report(const ScanReport& report) {
    ordered_json j;
    j["scan"] = report.scan_name;
    j["family"] = to_string(report.spec.family);
    j["omega"] = ordered_json::array({report.spec.omega_range.lo, report.spec.omega_range.hi});
    j["n"] = ordered_json::array({report.spec.n_range.lo, report.spec.n_range.hi});
    j["k"] = ordered_json::array({report.spec.k_range.lo, report.spec.k_range.hi});
    ordered_json filters = ordered_json::array();
    for (ScanFilter f : report.spec.filters) filters.push_back(to_string(f));
    j["filters"] = filters;
    j["allow_tight"] = report.spec.allow_tight;
    j["instances_checked"] = report.instances_checked;
    j["direct_factor_count"] = report.direct_factor_count;
    j["size_obstructed"] = report.size_obstructed;
    j["hypothesis_filtered"] = report.hypothesis_filtered;
    j["pairs_not_covered"] = report.pairs_not_covered;
    j["holds"] = report.holds_count;
    j["fails"] = report.fails_count;
    ordered_json cells = ordered_json::array();
    for (const CellStat& c : report.cells) {
        ordered_json jc;
        jc["omega"] = c.omega;
        jc["n"] = c.n;
        jc["k"] = c.k;
        jc["instances"] = c.instances;
        jc["direct_factors"] = c.direct_factors;
        jc["counterexamples"] = c.counterexamples;
        cells.push_back(jc);
    }
    j["cells"] = cells;
    if (!report.exploratory_fails.empty()) {
        ordered_json fails = ordered_json::array();
        for (const Counterexample& ce : report.exploratory_fails)
            fails.push_back(json_counterexample(ce));
        j["exploratory_fails"] = fails;
    }
    j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

ReportEnvelope envelope_for_scan(const ScanReport& report, std::string command_echo) {
    ReportEnvelope env;
    env.command_echo = std::move(command_echo);
    switch (report.verdict()) {
        case ScanVerdict::confirmed: env.verdict = Verdict::confirmed; break;
        case ScanVerdict::refuted: env.verdict = Verdict::refuted; break;
        case ScanVerdict::exploratory: env.verdict = Verdict::exploratory; break;
    }
    env.payload = json_scan_report(report);
    for (const Counterexample& ce : report.counterexamples)
        env.counterexamples.push_back(json_counterexample(ce));
    return env;
}

std::string emit_csv(const ScanReport& report) {
    std::ostringstream out;
    out << "omega,n,k,instances,direct_factors,counterexamples\n";
    for (const CellStat& c : report.cells)
        out << c.omega << ',' << c.n << ',' << c.k << ',' << c.instances << ','
            << c.direct_factors << ',' << c.counterexamples << '\n';
    return out.str();
}

namespace {

void print_kv(std::ostringstream& out, const std::string& key, const ordered_json& value) {
    out << "  " << key << ": ";
    if (value.is_string())
        out << value.get<std::string>();
    else
        out << value.dump();
    out << '\n';
}

}  // namespace

std::string emit_table(const ReportEnvelope& env) {
    std::ostringstream out;
    out << "verdict: " << to_string(env.verdict) << '\n';
    for (auto it = env.payload.begin(); it != env.payload.end(); ++it) {
        if (it.key() == "cells") {
            out << "  cells: " << it.value().size() << '\n';
            continue;
        }
        print_kv(out, it.key(), it.value());
    }
    if (env.counterexamples.empty()) {
        out << "counterexamples: none\n";
    } else {
        out << "counterexamples:\n";
        for (const auto& ce : env.counterexamples) out << "  " << ce.dump() << '\n';
    }
    return out.str();
}

}  // namespace cycfact
