#include "kgbohm/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>

#include "kgbohm/canonical.hpp"
#include "kgbohm/diagnostics.hpp"
#include "kgbohm/errors.hpp"
#include "kgbohm/output.hpp"
#include "kgbohm/uncoupled.hpp"

namespace kgbohm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class StageTimer {
public:
    explicit StageTimer(json& sink) : sink_(sink) {}
    template <typename Fn>
    void operator()(const std::string& stage, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        sink_[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

private:
    json& sink_;
};

/// Evaluates fn(i) for every index in parallel; rethrows the first failure.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string slice_name(const std::string& rep, const char* quantity, std::size_t index) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s_%s_t%04zu.dat", rep.c_str(), quantity, index);
    return buf;
}

/// x-range where any slice carries density above 1e-6 of the overall peak, padded by 2 sigma.
std::pair<double, double> support_range(std::span<const FieldSlice> slices, double pad) {
    double peak = 0.0;
    for (const auto& s : slices) peak = std::max(peak, max_abs(s.density));
    const auto& x = slices.front().grids->x();
    double lo = x.back(), hi = x.front();
    for (const auto& s : slices) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (std::abs(s.density[j]) > 1e-6 * peak) {
                lo = std::min(lo, x[j]);
                hi = std::max(hi, x[j]);
            }
        }
    }
    return {lo - pad, hi + pad};
}

class Writer {
public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    template <typename Fn>
    void file(const std::string& name, Fn&& write) {
        write(dir_ / name);
        files_.push_back(name);
    }

    const fs::path& dir() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

json report_json(const SuperluminalReport& r) {
    return {{"superluminal_cells", r.cells.size()}, {"max_speed_ratio", r.max_speed_ratio}, {"scanned_nodes", r.scanned_nodes}};
}

void write_maps(Writer& writer, const ScenarioConfig& cfg, const std::string& rep, std::span<const FieldSlice> slices,
                double velocity_range) {
    const auto [lo, hi] = support_range(slices, 2.0 * cfg.params.sigma);
    if (cfg.wants(OutputKind::density_maps)) {
        for (std::size_t i = 0; i < slices.size(); ++i) {
            writer.file(slice_name(rep, "density", i), [&](const fs::path& p) {
                output::write_field_table(p, slices[i], output::FieldColumn::density);
            });
        }
        double peak = 0.0;
        for (const auto& s : slices) peak = std::max(peak, max_abs(s.density));
        writer.file(rep + "_density.ppm", [&](const fs::path& p) {
            output::write_heatmap(p, slices, output::FieldColumn::density, lo, hi, peak, rep == "canonical");
        });
    }
    if (cfg.wants(OutputKind::velocity_maps)) {
        for (std::size_t i = 0; i < slices.size(); ++i) {
            writer.file(slice_name(rep, "velocity", i), [&](const fs::path& p) {
                output::write_field_table(p, slices[i], output::FieldColumn::velocity);
            });
        }
        writer.file(rep + "_velocity.ppm", [&](const fs::path& p) {
            output::write_heatmap(p, slices, output::FieldColumn::velocity, lo, hi, velocity_range, true);
        });
    }
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    json timings = json::object();
    StageTimer timed(timings);

    const auto grids = make_conjugate_grids(cfg.params);
    const auto g = gaussian_spectral(cfg.params, grids);
    const auto times = cfg.output_times();
    const double c = cfg.params.c;

    Writer writer(cfg.output_dir);
    json summary{{"scenario", cfg.name}, {"representation", to_string(cfg.representation)}, {"output_times", times}};
    summary["grid"] = {{"n_modes", grids->size()}, {"dx", grids->dx()}, {"dp", grids->dp()},
                       {"x_min", grids->x_min()}, {"x_max", grids->x_max()}};
    summary["initial_norm"] = g.norm();

    if (cfg.has_canonical()) {
        const auto fw = build_fw(*grids);
        const auto state = lift_initial(g);
        std::vector<FieldSlice> slices(times.size());
        std::vector<double> charge(times.size()), min_density(times.size());
        timed("canonical_fields", [&] {
            parallel_for(times.size(), [&](std::size_t i) {
                const auto field = evolve_canonical(state, fw, times[i]);
                slices[i] = canonical_velocity(charge_density(field), charge_current(field), cfg.masking.field_eps_rel);
                charge[i] = evolve_canonical_spectral(state, fw, times[i]).charge();
                min_density[i] = *std::min_element(slices[i].density.begin(), slices[i].density.end());
            });
        });
        double drift = 0.0;
        for (double q : charge) drift = std::max(drift, std::abs(q - charge.front()));
        const auto scan = superluminal_scan(slices, c, cfg.masking.canonical_scan_density_rel);
        summary["canonical"] = {{"charge", charge},
                                {"charge_drift", drift},
                                {"min_density", min_density},
                                {"pseudo_unitarity_residual", pseudo_unitarity_residual(fw)},
                                {"velocity", report_json(scan)}};
        write_maps(writer, cfg, "canonical", slices, 2.0 * c);
        if (cfg.wants(OutputKind::superluminal_report)) {
            writer.file("superluminal_canonical.dat",
                        [&](const fs::path& p) { output::write_superluminal_table(p, scan); });
        }
    }

    if (cfg.has_uncoupled()) {
        const UncoupledState state{g};
        std::vector<FieldSlice> slices(times.size());
        std::vector<double> norm(times.size()), integrated_j(times.size()), min_density(times.size());
        timed("uncoupled_fields", [&] {
            parallel_for(times.size(), [&](std::size_t i) {
                const auto slice = current_u_fast(state, times[i]);
                check_boundary(slice.density, "uncoupled slice");
                slices[i] = uncoupled_velocity(slice, slice, cfg.masking.field_eps_rel);
                norm[i] = diagnostics::integrated_density(slice);
                integrated_j[i] = diagnostics::integrated_current(slice);
                min_density[i] = *std::min_element(slice.density.begin(), slice.density.end());
            });
        });
        double drift = 0.0;
        for (double v : norm) drift = std::max(drift, std::abs(v - norm.front()));
        const auto scan = superluminal_scan(slices, c, cfg.masking.uncoupled_scan_density_rel);
        summary["uncoupled"] = {{"norm", norm},
                                {"norm_drift", drift},
                                {"min_density", min_density},
                                {"average_current", average_current(state)},
                                {"integrated_current", integrated_j},
                                {"velocity", report_json(scan)}};
        write_maps(writer, cfg, "uncoupled", slices, c);
        if (cfg.wants(OutputKind::superluminal_report)) {
            writer.file("superluminal_uncoupled.dat",
                        [&](const fs::path& p) { output::write_superluminal_table(p, scan); });
        }

        if (cfg.wants(OutputKind::trajectories)) {
            std::vector<Trajectory> trajectories;
            timed("trajectories", [&] {
                const auto seeds = sample_initial_positions(slices.front(), cfg.seeds);
                auto provider = make_uncoupled_provider(state, cfg.masking.trajectory_eps_rel);
                IntegratorConfig integ = cfg.integrator;
                integ.output_stride =
                    std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg.params.dt_out / integ.dt)));
                trajectories = integrate_ensemble(provider, seeds, cfg.params.t_final, integ);
            });
            double max_speed = 0.0;
            for (const auto& tr : trajectories)
                for (const auto& s : tr.samples) max_speed = std::max(max_speed, std::abs(s.v));
            const auto crossing = check_non_crossing(trajectories);
            summary["trajectories"] = {{"count", trajectories.size()},
                                       {"max_speed_ratio", max_speed / c},
                                       {"ordering_preserved", crossing.ordered},
                                       {"ordering_report", crossing.describe()}};
            writer.file("trajectories.dat",
                        [&](const fs::path& p) { output::write_trajectory_table(p, trajectories); });
            writer.file("trajectories_x.ppm",
                        [&](const fs::path& p) { output::write_trajectory_plot(p, trajectories, false); });
            writer.file("trajectories_v.ppm",
                        [&](const fs::path& p) { output::write_trajectory_plot(p, trajectories, true); });
        }
    }

    if (cfg.wants(OutputKind::validation)) {
        json checks = json::object();
        timed("validation", [&] {
            const double dt_fd = 1e-3;
            const std::vector<double> check_times{0.0, 0.5 * cfg.params.t_final, cfg.params.t_final};
            if (cfg.has_canonical()) {
                const auto fw = build_fw(*grids);
                const auto state = lift_initial(g);
                json cont = json::array();
                for (double t : check_times) cont.push_back(diagnostics::canonical_continuity(state, fw, t, dt_fd).ratio());
                checks["canonical_continuity_ratio"] = cont;
            }
            if (cfg.has_uncoupled()) {
                const UncoupledState state{g};
                json cont = json::array(), oracle = json::array(), imag = json::array();
                for (double t : check_times) {
                    cont.push_back(diagnostics::uncoupled_continuity(state, t, dt_fd).ratio());
                    const auto cmp = diagnostics::oracle_equivalence(state, t);
                    oracle.push_back(cmp.rel_linf);
                    imag.push_back(cmp.max_imag_residue);
                }
                checks["uncoupled_continuity_ratio"] = cont;
                checks["oracle_rel_linf"] = oracle;
                checks["oracle_imag_residue"] = imag;
            }
        });
        summary["validation"] = checks;
        writer.file("validation.json", [&](const fs::path& p) {
            std::ofstream(p) << checks.dump(2) << '\n';
        });
    }

    writer.file("summary.json", [&](const fs::path& p) { std::ofstream(p) << summary.dump(2) << '\n'; });

    json outputs = json::array();
    for (const auto& name : writer.files()) {
        const auto path = writer.dir() / name;
        outputs.push_back({{"file", name}, {"sha256", output::sha256_file(path)}, {"bytes", fs::file_size(path)}});
    }
    json manifest{{"tool", "kgbohm"},
                  {"version", KGBOHM_VERSION},
                  {"config", scenario_to_json(cfg)},
                  {"grid", summary["grid"]},
                  {"outputs", outputs},
                  {"timings_s", timings}};
    std::ofstream(writer.dir() / "manifest.json") << manifest.dump(2) << '\n';

    return {writer.dir(), writer.files(), summary, manifest};
}

}  // namespace kgbohm
