#include "specgap/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace specgap {

namespace {

// Keep this byte-for-byte in sync with schemas/report.schema.json
// (a unit test enforces the equality).
constexpr const char* kEmbeddedSchema = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "specgap report",
  "type": "object",
  "required": ["config", "records", "suite_results"],
  "properties": {
    "config": {
      "type": "object",
      "required": ["command", "tolerance", "mesh", "seed", "format"],
      "properties": {
        "command": {
          "type": "string",
          "enum": ["bounds", "model", "verify", "examples", "sweep"]
        },
        "parameters": { "type": "object" },
        "tolerance": { "type": "number" },
        "mesh": { "type": "integer" },
        "seed": { "type": "integer" },
        "format": { "type": "string", "enum": ["json", "csv", "table"] }
      }
    },
    "records": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["kind", "name", "value", "valid"],
        "properties": {
          "kind": {
            "type": "string",
            "enum": ["bound", "model", "example", "sweep_row"]
          },
          "input": { "type": "object" },
          "name": { "type": "string" },
          "value": { "type": "number" },
          "valid": { "type": "boolean" },
          "note": { "type": "string" },
          "diagnostics": {
            "type": "object",
            "required": ["method", "mesh", "residual"],
            "properties": {
              "method": { "type": "string" },
              "mesh": { "type": "integer" },
              "residual": { "type": "number" }
            }
          }
        }
      }
    },
    "suite_results": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "pass", "worst_margin", "detail"],
        "properties": {
          "name": { "type": "string" },
          "pass": { "type": "boolean" },
          "worst_margin": { "type": "number" },
          "detail": { "type": "string" }
        }
      }
    }
  }
}
)JSON";

std::string type_of(const nlohmann::json& j) {
    if (j.is_object()) return "object";
    if (j.is_array()) return "array";
    if (j.is_string()) return "string";
    if (j.is_boolean()) return "boolean";
    if (j.is_number_integer() || j.is_number_unsigned()) return "integer";
    if (j.is_number()) return "number";
    return "null";
}

bool type_matches(const std::string& expected, const nlohmann::json& j) {
    if (expected == "number") return j.is_number();
    if (expected == "integer") return j.is_number_integer() || j.is_number_unsigned();
    return type_of(j) == expected;
}

void validate_node(const nlohmann::json& doc, const nlohmann::json& schema,
                   const std::string& path, std::vector<std::string>& problems) {
    if (schema.contains("type")) {
        const std::string expected = schema["type"].get<std::string>();
        if (!type_matches(expected, doc)) {
            problems.push_back(path + ": expected " + expected + ", got " + type_of(doc));
            return;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& candidate : schema["enum"])
            if (candidate == doc) found = true;
        if (!found) problems.push_back(path + ": value not in enum");
    }
    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"])
                if (!doc.contains(key.get<std::string>()))
                    problems.push_back(path + ": missing required key '" +
                                       key.get<std::string>() + "'");
        }
        if (schema.contains("properties")) {
            for (const auto& [key, sub] : schema["properties"].items())
                if (doc.contains(key))
                    validate_node(doc.at(key), sub, path + "/" + key, problems);
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < doc.size(); ++i)
            validate_node(doc[i], schema["items"], path + "[" + std::to_string(i) + "]",
                          problems);
    }
}

} // namespace

double round_sig12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string format_sig(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

nlohmann::json record_to_json(const ReportRecord& record) {
    nlohmann::json j;
    j["kind"] = record.kind;
    j["input"] = record.input;
    j["name"] = record.name;
    j["value"] = round_sig12(record.value);
    j["valid"] = record.valid;
    j["note"] = record.note;
    if (record.diagnostics) {
        j["diagnostics"] = {{"method", record.diagnostics->method},
                            {"mesh", record.diagnostics->mesh},
                            {"residual", round_sig12(record.diagnostics->residual)}};
    }
    return j;
}

nlohmann::json suite_to_json(const SuiteResult& suite) {
    return {{"name", suite.name},
            {"pass", suite.pass},
            {"worst_margin", round_sig12(suite.worst_margin)},
            {"detail", suite.detail}};
}

nlohmann::json report_to_json(const RunConfigEcho& config,
                              const std::vector<ReportRecord>& records,
                              const std::vector<SuiteResult>& suites) {
    nlohmann::json j;
    j["config"] = {{"command", config.command},
                   {"parameters", config.parameters},
                   {"tolerance", round_sig12(config.tolerance)},
                   {"mesh", config.mesh},
                   {"seed", config.seed},
                   {"format", config.format}};
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) j["records"].push_back(record_to_json(r));
    j["suite_results"] = nlohmann::json::array();
    for (const auto& s : suites) j["suite_results"].push_back(suite_to_json(s));
    return j;
}

std::string render_table(const std::vector<ReportRecord>& records,
                         const std::vector<SuiteResult>& suites) {
    std::ostringstream os;
    if (!records.empty()) {
        os << "  name                       value  valid  note\n";
        os << "  -------------------------------------------------------------\n";
        for (const auto& r : records) {
            char line[256];
            std::snprintf(line, sizeof(line), "  %-20s %12s  %-5s  %s", r.name.c_str(),
                          format_sig(r.value, 6).c_str(), r.valid ? "yes" : "no",
                          r.note.c_str());
            os << line;
            if (r.diagnostics) {
                char diag[128];
                std::snprintf(diag, sizeof(diag), " [%s, mesh %d, residual %s]",
                              r.diagnostics->method.c_str(), r.diagnostics->mesh,
                              format_sig(r.diagnostics->residual, 3).c_str());
                os << diag;
            }
            if (r.wall_time_ms > 0.0)
                os << " (" << format_sig(r.wall_time_ms, 3) << " ms)";
            os << "\n";
        }
    }
    if (!suites.empty()) {
        os << "  suite                         status  worst margin  detail\n";
        os << "  -------------------------------------------------------------\n";
        for (const auto& s : suites) {
            char line[256];
            std::snprintf(line, sizeof(line), "  %-28s  %-6s  %12s  %s\n",
                          s.name.c_str(), s.pass ? "PASS" : "FAIL",
                          format_sig(s.worst_margin, 3).c_str(), s.detail.c_str());
            os << line;
        }
    }
    return os.str();
}

std::string render_csv(const std::vector<ReportRecord>& records) {
    std::ostringstream os;
    os << "kind,name,value,valid,note\n";
    for (const auto& r : records) {
        std::string note = r.note;
        for (char& c : note)
            if (c == ',') c = ';';
        os << r.kind << ',' << r.name << ',' << format_sig(round_sig12(r.value), 12)
           << ',' << (r.valid ? 1 : 0) << ',' << note << "\n";
    }
    return os.str();
}

std::string render_sweep_csv(const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << format_sig(round_sig12(row[i]), 12) << (i + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

nlohmann::json fixture_to_json(const FoliationExample& example) {
    nlohmann::json j;
    j["name"] = example.name;
    j["ambient_dim"] = example.ambient_dim;
    j["K_ambient"] = round_sig12(example.K_ambient);
    j["known_lambda1B"] = round_sig12(example.known_lambda1B);
    j["known_diameter"] = round_sig12(example.known_diameter);
    j["has_reduction"] = example.reduction.has_value();
    if (example.multiplicity) {
        j["multiplicity"] = {{"g", example.multiplicity->g},
                             {"m1", example.multiplicity->m1},
                             {"m2", example.multiplicity->m2}};
    }
    return j;
}

const nlohmann::json& report_schema() {
    static const nlohmann::json schema = nlohmann::json::parse(kEmbeddedSchema);
    return schema;
}

std::vector<std::string> validate_against_schema(const nlohmann::json& document,
                                                 const nlohmann::json& schema) {
    std::vector<std::string> problems;
    validate_node(document, schema, "$", problems);
    return problems;
}

} // namespace specgap
