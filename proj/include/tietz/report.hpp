#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tietz/common.hpp"

namespace tietz::io {

inline constexpr const char* tool_name = "tietz";
inline constexpr const char* tool_version = "0.1.0";

struct CheckResult {
    std::string id;
    std::string anchor;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct HistoryRow {
    int order = 0;
    double l2_residual = 0.0;
    double sup_error = 0.0;
};

struct DecompositionSummary {
    int order = 0;
    std::vector<cplx> epsilon;
    double epsilon_consistency = 0.0;
    std::vector<cplx> c;
    std::vector<cplx> d;
    double residual = 0.0;
    double condition = 1.0;
    bool flagged = false;
    bool regularized = false;
    double target_norm = 0.0;
    std::vector<HistoryRow> history;
};

struct RunReport {
    std::string tool = tool_name;
    std::string version = tool_version;
    std::string config_path;
    nlohmann::json config_echo = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool strict = false;
    std::string status = "pass"; // pass | check-failure | numerical-failure | config-error
    int exit_code = 0;
    std::string message;
    std::optional<DecompositionSummary> decomposition;
    std::vector<CheckResult> checks;
    double total_seconds = 0.0;
    double decomposition_seconds = 0.0;
    double checks_seconds = 0.0;
};

nlohmann::json to_json(const RunReport& report);
/// Throws DomainError when the document violates the schema.
RunReport report_from_json(const nlohmann::json& doc);
/// Empty when the document is valid; otherwise one message per violation.
std::vector<std::string> validate_report(const nlohmann::json& doc);

} // namespace tietz::io
