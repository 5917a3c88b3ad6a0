#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "kgbohm/scenario.hpp"

namespace kgbohm {

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config = 2,
    exit_numerical_guard = 3,
    exit_invariant_failure = 4,
};

struct RunResult {
    std::filesystem::path output_dir;
    std::vector<std::string> files;  // relative to output_dir, manifest excluded
    nlohmann::json summary;
    nlohmann::json manifest;
};

/// Runs one scenario end to end and writes its data products, summary.json and
/// manifest.json into config.output_dir. Throws ConfigError or GuardError.
RunResult run_scenario(const ScenarioConfig& config);

struct ValidateOptions {
    std::size_t n_modes{1024};
    double oracle_tol{1e-6};
    double continuity_dt{1e-3};
    double continuity_tol{1e-3};
};

struct CheckResult {
    std::string name;
    double measured;
    double bound;
    bool passed;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    void print(std::ostream& os) const;
};

/// Invariant suite over the built-in p0=3 and p0=0 Gaussians.
ValidationReport validate(const ValidateOptions& options = {});

}  // namespace kgbohm
