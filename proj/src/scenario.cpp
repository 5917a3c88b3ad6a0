#include "kgbohm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kgbohm/errors.hpp"

namespace kgbohm {

using nlohmann::json;

namespace {

/// Reads keys from one JSON object and rejects any key it was not asked about.
class StrictObject {
public:
    StrictObject(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) throw ConfigError(where() + " must be an object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return doc_.contains(key);
    }

    template <typename T>
    T get(const std::string& key, T fallback) {
        if (!has(key)) return fallback;
        try {
            return doc_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(where(key) + " has the wrong type");
        }
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        if (!doc_.at(key).is_number()) throw ConfigError(where(key) + " must be a number");
        return doc_.at(key).get<double>();
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        if (!has(key)) return fallback;
        const auto& v = doc_.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ConfigError(where(key) + " must be a nonnegative integer");
        return v.get<std::size_t>();
    }

    std::string text(const std::string& key, std::string fallback) {
        if (!has(key)) return fallback;
        if (!doc_.at(key).is_string()) throw ConfigError(where(key) + " must be a string");
        return doc_.at(key).get<std::string>();
    }

    StrictObject child(const std::string& key) {
        static const json empty = json::object();
        return {has(key) ? doc_.at(key) : empty, where(key)};
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return doc_.at(key);
    }

    void finish() const {
        for (const auto& [key, value] : doc_.items()) {
            if (!seen_.contains(key)) throw ConfigError("unknown key " + where(key));
        }
    }

private:
    std::string where() const { return path_.empty() ? "document" : "'" + path_ + "'"; }
    std::string where(const std::string& key) const {
        return "'" + (path_.empty() ? key : path_ + "." + key) + "'";
    }

    const json& doc_;
    std::string path_;
    std::set<std::string> seen_;
};

Representation parse_representation(const std::string& s) {
    if (s == "canonical") return Representation::canonical;
    if (s == "uncoupled") return Representation::uncoupled;
    if (s == "both") return Representation::both;
    throw ConfigError("representation must be canonical, uncoupled or both, got '" + s + "'");
}

OutputKind parse_output(const std::string& s) {
    if (s == "density-maps") return OutputKind::density_maps;
    if (s == "velocity-maps") return OutputKind::velocity_maps;
    if (s == "trajectories") return OutputKind::trajectories;
    if (s == "superluminal-report") return OutputKind::superluminal_report;
    if (s == "validation") return OutputKind::validation;
    throw ConfigError("unknown output '" + s + "'");
}

SliceRefresh parse_refresh(const std::string& s) {
    if (s == "rolling") return SliceRefresh::rolling;
    if (s == "keep-all") return SliceRefresh::keep_all;
    throw ConfigError("integrator.refresh must be rolling or keep-all, got '" + s + "'");
}

std::string to_string(SliceRefresh r) { return r == SliceRefresh::rolling ? "rolling" : "keep-all"; }

// Domain defaults: 40 sigma behind the packet, 88 sigma ahead along the
// propagation direction; symmetric 64 sigma for a packet at rest.
std::pair<double, double> default_span(double x0, double sigma, double p0) {
    if (p0 > 0.0) return {x0 - 40.0 * sigma, x0 + 88.0 * sigma};
    if (p0 < 0.0) return {x0 - 88.0 * sigma, x0 + 40.0 * sigma};
    return {x0 - 64.0 * sigma, x0 + 64.0 * sigma};
}

}  // namespace

std::string to_string(Representation r) {
    switch (r) {
        case Representation::canonical: return "canonical";
        case Representation::uncoupled: return "uncoupled";
        case Representation::both: return "both";
    }
    return "both";
}

std::string to_string(OutputKind k) {
    switch (k) {
        case OutputKind::density_maps: return "density-maps";
        case OutputKind::velocity_maps: return "velocity-maps";
        case OutputKind::trajectories: return "trajectories";
        case OutputKind::superluminal_report: return "superluminal-report";
        case OutputKind::validation: return "validation";
    }
    return "";
}

bool ScenarioConfig::wants(OutputKind kind) const {
    return std::find(outputs.begin(), outputs.end(), kind) != outputs.end();
}

std::vector<double> ScenarioConfig::output_times() const {
    std::vector<double> times;
    const double steps = std::floor(params.t_final / params.dt_out + 1e-9);
    for (std::size_t k = 0; static_cast<double>(k) <= steps; ++k) times.push_back(static_cast<double>(k) * params.dt_out);
    if (params.t_final - times.back() > 1e-9 * std::max(1.0, params.t_final)) times.push_back(params.t_final);
    return times;
}

void ScenarioConfig::validate() const {
    params.validate();
    if (name.empty()) throw ConfigError("name must be nonempty");
    if (output_dir.empty()) throw ConfigError("output_dir must be nonempty");
    if (!(integrator.dt > 0.0)) throw ConfigError("integrator.dt must be > 0");
    if (integrator.dt > params.dt_out) throw ConfigError("integrator.dt must not exceed time.dt_out");
    if (seeds == 0) throw ConfigError("seeds must be >= 1");
    if (seeds > params.n_modes) throw ConfigError("seeds must not exceed n_modes");
    if (wants(OutputKind::trajectories) && !has_uncoupled())
        throw ConfigError("trajectories require the uncoupled representation");
    for (double v : {masking.field_eps_rel, masking.trajectory_eps_rel, masking.canonical_scan_density_rel,
                     masking.uncoupled_scan_density_rel}) {
        if (!(v >= 0.0) || !(v < 1.0)) throw ConfigError("masking thresholds must lie in [0, 1)");
    }
    std::set<OutputKind> unique(outputs.begin(), outputs.end());
    if (unique.size() != outputs.size()) throw ConfigError("outputs contains duplicates");
}

ScenarioConfig scenario_from_json(const json& doc) {
    ScenarioConfig cfg;
    StrictObject root(doc, "");
    cfg.name = root.text("name", cfg.name);

    auto physics = root.child("physics");
    cfg.params.hbar = physics.number("hbar", 1.0);
    cfg.params.c = physics.number("c", 1.0);
    cfg.params.m = physics.number("m", 1.0);
    physics.finish();

    auto packet = root.child("wavepacket");
    cfg.params.p0 = packet.number("p0", 0.0);
    cfg.params.x0 = packet.number("x0", 0.0);
    cfg.params.sigma = packet.number("sigma", 1.0);
    packet.finish();

    auto grid = root.child("grid");
    cfg.params.n_modes = grid.count("n_modes", 1024);
    const auto [lo, hi] = default_span(cfg.params.x0, cfg.params.sigma, cfg.params.p0);
    cfg.params.x_min = grid.number("x_min", lo);
    cfg.params.x_max = grid.number("x_max", hi);
    grid.finish();

    auto time = root.child("time");
    cfg.params.t_final = time.number("t_final", 2.0);
    cfg.params.dt_out = time.number("dt_out", 0.1);
    time.finish();

    cfg.representation = parse_representation(root.text("representation", "both"));

    if (root.has("outputs")) {
        const auto& list = root.raw("outputs");
        if (!list.is_array()) throw ConfigError("'outputs' must be an array of strings");
        for (const auto& item : list) {
            if (!item.is_string()) throw ConfigError("'outputs' must be an array of strings");
            cfg.outputs.push_back(parse_output(item.get<std::string>()));
        }
    } else {
        cfg.outputs = {OutputKind::density_maps, OutputKind::velocity_maps};
    }
    cfg.output_dir = root.text("output_dir", "out/" + cfg.name);

    auto integ = root.child("integrator");
    cfg.integrator.dt = integ.number("dt", 1e-2);
    if (const auto scheme = integ.text("scheme", "rk4"); scheme != "rk4")
        throw ConfigError("integrator.scheme must be rk4, got '" + scheme + "'");
    cfg.integrator.refresh = parse_refresh(integ.text("refresh", "rolling"));
    integ.finish();

    cfg.seeds = root.count("seeds", 16);

    auto mask = root.child("masking");
    cfg.masking.field_eps_rel = mask.number("field_eps_rel", cfg.masking.field_eps_rel);
    cfg.masking.trajectory_eps_rel = mask.number("trajectory_eps_rel", cfg.masking.trajectory_eps_rel);
    cfg.masking.canonical_scan_density_rel =
        mask.number("canonical_scan_density_rel", cfg.masking.canonical_scan_density_rel);
    cfg.masking.uncoupled_scan_density_rel =
        mask.number("uncoupled_scan_density_rel", cfg.masking.uncoupled_scan_density_rel);
    mask.finish();

    root.finish();
    cfg.validate();
    return cfg;
}

json scenario_to_json(const ScenarioConfig& cfg) {
    json outputs = json::array();
    for (auto k : cfg.outputs) outputs.push_back(to_string(k));
    const auto& p = cfg.params;
    return json{
        {"name", cfg.name},
        {"physics", {{"hbar", p.hbar}, {"c", p.c}, {"m", p.m}}},
        {"wavepacket", {{"p0", p.p0}, {"x0", p.x0}, {"sigma", p.sigma}}},
        {"grid", {{"n_modes", p.n_modes}, {"x_min", p.x_min}, {"x_max", p.x_max}}},
        {"time", {{"t_final", p.t_final}, {"dt_out", p.dt_out}}},
        {"representation", to_string(cfg.representation)},
        {"outputs", outputs},
        {"output_dir", cfg.output_dir},
        {"integrator", {{"dt", cfg.integrator.dt}, {"scheme", "rk4"}, {"refresh", to_string(cfg.integrator.refresh)}}},
        {"seeds", cfg.seeds},
        {"masking",
         {{"field_eps_rel", cfg.masking.field_eps_rel},
          {"trajectory_eps_rel", cfg.masking.trajectory_eps_rel},
          {"canonical_scan_density_rel", cfg.masking.canonical_scan_density_rel},
          {"uncoupled_scan_density_rel", cfg.masking.uncoupled_scan_density_rel}}},
    };
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

std::vector<BuiltinScenario> builtin_scenarios() {
    return {
        {"canonical-density", "canonical charge density of the p0=3 Gaussian at t=0 and t=2"},
        {"canonical-velocity", "canonical velocity field j/rho on t in [0,2] with superluminal scan"},
        {"uncoupled-density", "uncoupled density of the same initial state at t=0,1,2"},
        {"uncoupled-velocity", "uncoupled velocity field J/rho on t in [0,2] with superluminal scan"},
        {"rest-trajectories", "16 Bohmian trajectories of the p0=0 Gaussian in the uncoupled representation, t in [0,10]"},
        {"compare", "both representations, every output, p0=3 on t in [0,2]"},
    };
}

ScenarioConfig builtin_scenario(std::string_view name) {
    json doc{{"name", std::string(name)}, {"wavepacket", {{"p0", 3.0}, {"x0", 0.0}, {"sigma", 1.0}}}};
    if (name == "canonical-density") {
        doc["representation"] = "canonical";
        doc["outputs"] = {"density-maps"};
        doc["time"] = {{"t_final", 2.0}, {"dt_out", 2.0}};
    } else if (name == "canonical-velocity") {
        doc["representation"] = "canonical";
        doc["outputs"] = {"velocity-maps", "superluminal-report"};
        doc["time"] = {{"t_final", 2.0}, {"dt_out", 0.05}};
    } else if (name == "uncoupled-density") {
        doc["representation"] = "uncoupled";
        doc["outputs"] = {"density-maps"};
        doc["time"] = {{"t_final", 2.0}, {"dt_out", 1.0}};
    } else if (name == "uncoupled-velocity") {
        doc["representation"] = "uncoupled";
        doc["outputs"] = {"velocity-maps", "superluminal-report"};
        doc["time"] = {{"t_final", 2.0}, {"dt_out", 0.05}};
    } else if (name == "rest-trajectories") {
        doc["wavepacket"]["p0"] = 0.0;
        doc["representation"] = "uncoupled";
        doc["outputs"] = {"trajectories", "velocity-maps"};
        doc["time"] = {{"t_final", 10.0}, {"dt_out", 0.1}};
        doc["seeds"] = 16;
    } else if (name == "compare") {
        doc["representation"] = "both";
        doc["outputs"] = {"density-maps", "velocity-maps", "trajectories", "superluminal-report", "validation"};
        doc["time"] = {{"t_final", 2.0}, {"dt_out", 0.1}};
    } else {
        throw ConfigError("unknown built-in scenario '" + std::string(name) + "'");
    }
    return scenario_from_json(doc);
}

}  // namespace kgbohm
