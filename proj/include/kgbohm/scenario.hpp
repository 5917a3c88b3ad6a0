#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "kgbohm/bohm.hpp"
#include "kgbohm/params.hpp"

namespace kgbohm {

enum class Representation { canonical, uncoupled, both };

enum class OutputKind { density_maps, velocity_maps, trajectories, superluminal_report, validation };

struct MaskingConfig {
    double field_eps_rel{1e-12};
    double trajectory_eps_rel{1e-10};
    // Superluminal scans only consider nodes with density above this fraction of the slice peak.
    double canonical_scan_density_rel{0.0};
    double uncoupled_scan_density_rel{1e-3};
};

/// A complete, self-contained run description. Every default is explicit
/// after loading, so `to_json(load(...))` is the persisted form.
struct ScenarioConfig {
    std::string name{"scenario"};
    SimulationParams params;
    Representation representation{Representation::both};
    std::vector<OutputKind> outputs;
    std::string output_dir{"out"};
    IntegratorConfig integrator;
    std::size_t seeds{16};
    MaskingConfig masking;

    bool wants(OutputKind kind) const;
    bool has_canonical() const { return representation != Representation::uncoupled; }
    bool has_uncoupled() const { return representation != Representation::canonical; }
    /// Output times 0, dt_out, 2 dt_out, ... up to and including t_final.
    std::vector<double> output_times() const;

    /// Throws ConfigError on any inconsistency.
    void validate() const;
};

/// Parses a scenario document. Missing keys take defaults; unknown keys, wrong
/// types and invalid values raise ConfigError.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioConfig& config);

ScenarioConfig load_scenario(const std::filesystem::path& path);

struct BuiltinScenario {
    std::string name;
    std::string description;
};

std::vector<BuiltinScenario> builtin_scenarios();
/// Throws ConfigError for an unknown name.
ScenarioConfig builtin_scenario(std::string_view name);

std::string to_string(Representation r);
std::string to_string(OutputKind k);

}  // namespace kgbohm
