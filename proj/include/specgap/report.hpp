#pragma once

// Machine-readable output layer for the CLI: report records, JSON/CSV/table
// rendering, and a structural validator for the shipped JSON schema.
//
// Output contract: JSON and CSV round to 12 significant digits and contain no
// wall-clock data, so identical configurations produce byte-identical files;
// human tables use 6 significant digits and may show timings.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "specgap/bounds.hpp"
#include "specgap/foliation_zoo.hpp"
#include "specgap/verify.hpp"

namespace specgap {

struct SolverDiagnostics {
    std::string method;
    int mesh = 0;
    double residual = 0.0;
};

struct ReportRecord {
    std::string kind;  // "bound" | "model" | "example" | "sweep_row"
    nlohmann::json input;   // echo of the inputs that produced the record
    std::string name;
    double value = 0.0;
    bool valid = true;
    std::string note;
    std::optional<SolverDiagnostics> diagnostics;
    double wall_time_ms = 0.0;  // table output only, never serialized
};

struct RunConfigEcho {
    std::string command;
    nlohmann::json parameters;  // flags as given
    double tolerance = 1e-9;
    int mesh = 1024;
    std::uint64_t seed = 0;
    std::string format;
};

/// Round to 12 significant digits (the JSON/CSV precision contract).
double round_sig12(double x);
std::string format_sig(double x, int digits);

nlohmann::json record_to_json(const ReportRecord& record);
nlohmann::json suite_to_json(const SuiteResult& suite);
nlohmann::json report_to_json(const RunConfigEcho& config,
                              const std::vector<ReportRecord>& records,
                              const std::vector<SuiteResult>& suites);

std::string render_table(const std::vector<ReportRecord>& records,
                         const std::vector<SuiteResult>& suites);
std::string render_csv(const std::vector<ReportRecord>& records);
/// CSV for sweep output: explicit column list, one row per record, LF endings.
std::string render_sweep_csv(const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows);

nlohmann::json fixture_to_json(const FoliationExample& example);

/// The schema shipped at schemas/report.schema.json (embedded copy).
const nlohmann::json& report_schema();

/// Minimal structural validation (type/required/properties/items/enum).
/// Returns human-readable problems; empty = valid.
std::vector<std::string> validate_against_schema(const nlohmann::json& document,
                                                 const nlohmann::json& schema);

} // namespace specgap
