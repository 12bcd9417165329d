#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tietz/config.hpp"
#include "tietz/report.hpp"

namespace tietz::io {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_numerical_failure = 3 };

struct CheckInfo {
    std::string id;
    std::string anchor;
    std::string description;
};

/// Every check accepted by run, in execution order.
const std::vector<CheckInfo>& check_catalog();
std::string list_checks();

struct RunOptions {
    std::optional<std::filesystem::path> out_dir; // overrides output.directory
    std::optional<std::uint64_t> seed;            // overrides run.seed
    bool strict = false;                          // escalate flags to failures
    std::ostream* log = nullptr;
};

struct RunOutcome {
    RunReport report;
    std::optional<series::SeriesDecomposition> decomposition;
};

/// Runs a parsed configuration. Configuration and numerical problems do not
/// throw; they are reported through report.status and report.exit_code.
RunOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options, std::string config_path = "");

/// coefficients.csv (tag,k,m,re,im) and residuals.csv (M,l2_residual,sup_error)
/// with 17 significant digits; k is 1-based.
void write_coefficients_csv(std::ostream& out, const series::SeriesDecomposition& decomposition);
void write_residuals_csv(std::ostream& out, const DecompositionSummary& summary);

/// Loads, runs and writes the artifact files. Returns the exit code.
int run(const std::filesystem::path& config_path, const RunOptions& options);

} // namespace tietz::io
