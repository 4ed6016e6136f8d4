#pragma once

#include <string>

#include <json.hpp>

#include "cycfact/scans.hpp"

namespace cycfact {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Verdict { confirmed, refuted, exploratory, value };
const char* to_string(Verdict v);

/// The single output record every CLI verb emits.  Key order is fixed:
/// tool_version, command, verdict, payload, counterexamples.
struct ReportEnvelope {
    std::string command_echo;
    Verdict verdict = Verdict::value;
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    nlohmann::ordered_json counterexamples = nlohmann::ordered_json::array();

    int exit_code() const { return verdict == Verdict::refuted ? 1 : 0; }
};

nlohmann::ordered_json to_json(const ReportEnvelope& env);

enum class OutputFormat { json, csv, table };
OutputFormat output_format_from_string(const std::string& s);

std::string emit_json(const ReportEnvelope& env);

/// CSV is defined only for scan reports: one row per instance cell.
std::string emit_csv(const ScanReport& report);

std::string emit_table(const ReportEnvelope& env);

// JSON building blocks shared by the CLI verbs.
nlohmann::ordered_json json_set(const ResidueSet& s);
nlohmann::ordered_json json_counterexample(const Counterexample& ce);
nlohmann::ordered_json json_scan_report(const ScanReport& report);
ReportEnvelope envelope_for_scan(const ScanReport& report, std::string command_echo);

}  // namespace cycfact
