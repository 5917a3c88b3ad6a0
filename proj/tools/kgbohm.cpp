// Command-line front end: run <config|builtin>, validate, list-scenarios.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "kgbohm/errors.hpp"
#include "kgbohm/run.hpp"
#include "kgbohm/scenario.hpp"

namespace {

kgbohm::ScenarioConfig resolve_scenario(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) return kgbohm::load_scenario(name_or_path);
    for (const auto& b : kgbohm::builtin_scenarios())
        if (b.name == name_or_path) return kgbohm::builtin_scenario(name_or_path);
    throw kgbohm::ConfigError("'" + name_or_path + "' is neither a config file nor a built-in scenario");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral Klein-Gordon wavepacket simulator with de Broglie-Bohm trajectories"};
    app.set_version_flag("--version", KGBOHM_VERSION);
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir;
    bool dump_config = false;
    bool dry_run = false;
    auto* run = app.add_subcommand("run", "Run a scenario (config file path or built-in name)");
    run->add_option("config", scenario, "Scenario config (JSON) or built-in scenario name")->required();
    run->add_option("-o,--out", out_dir, "Override the output directory");
    run->add_flag("--print-config", dump_config, "Print the fully materialized config before running");
    run->add_flag("--dry-run", dry_run, "Validate and print the config without running");

    kgbohm::ValidateOptions vopts;
    auto* validate = app.add_subcommand("validate", "Run the invariant suite on built-in scenarios");
    validate->add_option("--oracle-tol", vopts.oracle_tol, "Fast-vs-direct current tolerance")->capture_default_str();
    validate->add_option("--continuity-dt", vopts.continuity_dt, "Time step of the centered difference")
        ->capture_default_str();
    validate->add_option("--continuity-tol", vopts.continuity_tol, "Relative continuity residual bound")
        ->capture_default_str();
    validate->add_option("--n-modes", vopts.n_modes, "Grid size")->capture_default_str();

    auto* list = app.add_subcommand("list-scenarios", "List built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kgbohm::exit_config;
    }

    try {
        if (*list) {
            for (const auto& b : kgbohm::builtin_scenarios()) std::cout << b.name << "\t" << b.description << "\n";
            return kgbohm::exit_ok;
        }
        if (*validate) {
            const auto report = kgbohm::validate(vopts);
            report.print(std::cout);
            return report.passed() ? kgbohm::exit_ok : kgbohm::exit_invariant_failure;
        }
        auto cfg = resolve_scenario(scenario);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        cfg.validate();
        if (dump_config || dry_run) std::cout << kgbohm::scenario_to_json(cfg).dump(2) << "\n";
        if (dry_run) return kgbohm::exit_ok;
        const auto result = kgbohm::run_scenario(cfg);
        std::cout << "wrote " << result.files.size() + 1 << " files to " << result.output_dir.string() << "\n";
        return kgbohm::exit_ok;
    } catch (const kgbohm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kgbohm::exit_config;
    } catch (const kgbohm::GuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return kgbohm::exit_numerical_guard;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kgbohm::exit_internal;
    }
}
