#include "kgbohm/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kgbohm/errors.hpp"

namespace kgbohm {

DensityCdf::DensityCdf(const FieldSlice& density) : x_(density.grids->x()), cdf_(density.density.size()) {
    const double dx = density.grids->dx();
    cdf_[0] = 0.0;
    for (std::size_t j = 1; j < cdf_.size(); ++j)
        cdf_[j] = cdf_[j - 1] + 0.5 * dx * (density.density[j - 1] + density.density[j]);
}

double DensityCdf::at(double x) const {
    if (x <= x_.front()) return 0.0;
    if (x >= x_.back()) return cdf_.back();
    const double dx = x_[1] - x_[0];
    const auto j = std::min(static_cast<std::size_t>((x - x_.front()) / dx), x_.size() - 2);
    const double f = (x - x_[j]) / dx;
    return (1.0 - f) * cdf_[j] + f * cdf_[j + 1];
}

double DensityCdf::quantile(double q) const {
    const double target = q * total();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.begin()) return x_.front();
    if (it == cdf_.end()) return x_.back();
    const auto i = static_cast<std::size_t>(it - cdf_.begin());
    const std::size_t j = i - 1;
    const double f = (target - cdf_[j]) / (cdf_[i] - cdf_[j]);
    return x_[j] + f * (x_[i] - x_[j]);
}

std::vector<double> sample_initial_positions(const FieldSlice& rho0, std::size_t n) {
    if (n == 0) throw std::invalid_argument("sample_initial_positions: n must be >= 1");
    if (n > rho0.density.size())
        throw std::invalid_argument("sample_initial_positions: n exceeds the grid resolution");
    const DensityCdf cdf(rho0);
    std::vector<double> seeds(n);
    for (std::size_t k = 1; k <= n; ++k)
        seeds[k - 1] = cdf.quantile((static_cast<double>(k) - 0.5) / static_cast<double>(n));
    return seeds;
}

VelocityProvider::VelocityProvider(SliceFn fn, std::size_t guard_cells)
    : fn_(std::move(fn)), guard_cells_(guard_cells) {}

void VelocityProvider::prepare(std::span<const double> times) {
    std::vector<double> missing;
    for (double t : times) {
        if (!cache_.contains(t) && std::find(missing.begin(), missing.end(), t) == missing.end())
            missing.push_back(t);
    }
    if (missing.empty()) return;
    std::vector<FieldSlice> computed(missing.size());
    std::vector<std::string> errors(missing.size());
    const auto n = static_cast<std::ptrdiff_t>(missing.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            computed[i] = fn_(missing[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < missing.size(); ++i) {
        if (!errors[i].empty()) throw GuardError(errors[i]);
        cache_.emplace(missing[i], std::move(computed[i]));
    }
}

void VelocityProvider::evict_before(double t) { cache_.erase(cache_.begin(), cache_.lower_bound(t)); }

const FieldSlice& VelocityProvider::slice(double t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, fn_(t)).first;
    return it->second;
}

double VelocityProvider::velocity(double x, double t) {
    slice(t);
    return cached_velocity(x, t);
}

double VelocityProvider::cached_velocity(double x, double t) const {
    const auto it = cache_.find(t);
    if (it == cache_.end()) throw std::logic_error("velocity slice not cached for the requested time");
    const FieldSlice& s = it->second;
    const auto& grid_x = s.grids->x();
    const double dx = s.grids->dx();
    const std::size_t n = grid_x.size();
    const double lo = grid_x.front() + static_cast<double>(guard_cells_) * dx;
    const double hi = grid_x[n - 1 - guard_cells_];
    if (!(x >= lo && x <= hi)) {
        std::ostringstream msg;
        msg << "trajectory left the domain interior: x = " << x << " at t = " << t;
        throw GuardError(msg.str());
    }
    const auto j = std::min(static_cast<std::size_t>((x - grid_x.front()) / dx), n - 2);
    if (s.masked(j) || s.masked(j + 1)) {
        std::ostringstream msg;
        msg << "trajectory entered a masked low-density region: x = " << x << " at t = " << t;
        throw GuardError(msg.str());
    }
    const double f = (x - grid_x[j]) / dx;
    return (1.0 - f) * s.velocity[j] + f * s.velocity[j + 1];
}

VelocityProvider make_uncoupled_provider(UncoupledState state, double eps_rel) {
    return VelocityProvider([state = std::move(state), eps_rel](double t) {
        const auto slice = current_u_fast(state, t);
        return uncoupled_velocity(slice, slice, eps_rel);
    });
}

namespace {

struct StepPlan {
    std::size_t steps;
    double h;
    double time(std::size_t k) const { return static_cast<double>(k) * h; }
    double half(std::size_t k) const { return (static_cast<double>(k) + 0.5) * h; }
};

StepPlan plan_steps(double t_final, const IntegratorConfig& config) {
    if (!(config.dt > 0.0)) throw std::invalid_argument("integrator dt must be > 0");
    if (!(t_final >= 0.0)) throw std::invalid_argument("t_final must be >= 0");
    if (config.output_stride == 0) throw std::invalid_argument("output_stride must be >= 1");
    const auto steps = static_cast<std::size_t>(std::ceil(t_final / config.dt - 1e-9));
    return {steps, steps == 0 ? 0.0 : t_final / static_cast<double>(steps)};
}

// Stage times come from the step plan so they match the slice-cache keys exactly.
template <typename VelocityFn>
double rk4_step(double x, const StepPlan& plan, std::size_t k, VelocityFn&& v) {
    const double h = plan.h;
    const double k1 = v(x, plan.time(k));
    const double k2 = v(x + 0.5 * h * k1, plan.half(k));
    const double k3 = v(x + 0.5 * h * k2, plan.half(k));
    const double k4 = v(x + h * k3, plan.time(k + 1));
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

bool should_record(std::size_t step, const StepPlan& plan, const IntegratorConfig& config) {
    return step % config.output_stride == 0 || step == plan.steps;
}

}  // namespace

Trajectory integrate_trajectory(VelocityProvider& provider, double seed, double t_final, const IntegratorConfig& config) {
    const StepPlan plan = plan_steps(t_final, config);
    Trajectory traj{seed, {}};
    double x = seed;
    traj.samples.push_back({0.0, x, provider.velocity(x, 0.0)});
    for (std::size_t k = 0; k < plan.steps; ++k) {
        const double next = plan.time(k + 1);
        x = rk4_step(x, plan, k, [&provider](double xx, double tt) { return provider.velocity(xx, tt); });
        if (should_record(k + 1, plan, config)) traj.samples.push_back({next, x, provider.velocity(x, next)});
        if (config.refresh == SliceRefresh::rolling) provider.evict_before(next);
    }
    return traj;
}

std::vector<Trajectory> integrate_ensemble(VelocityProvider& provider, std::span<const double> seeds, double t_final,
                                           const IntegratorConfig& config) {
    const StepPlan plan = plan_steps(t_final, config);
    const auto n = static_cast<std::ptrdiff_t>(seeds.size());
    std::vector<Trajectory> out(seeds.size());
    std::vector<double> x(seeds.begin(), seeds.end());
    std::vector<std::string> errors(seeds.size());

    auto raise_first = [&errors] {
        for (const auto& e : errors)
            if (!e.empty()) throw GuardError(e);
    };

    const double t0[] = {0.0};
    provider.prepare(t0);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        out[i].seed = seeds[i];
        out[i].samples.push_back({0.0, x[i], provider.cached_velocity(x[i], 0.0)});
    }

    for (std::size_t k = 0; k < plan.steps; ++k) {
        const double next = plan.time(k + 1);
        const double stage_times[] = {plan.time(k), plan.half(k), next};
        provider.prepare(stage_times);
        const bool record = should_record(k + 1, plan, config);
        const VelocityProvider& cache = provider;

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (!errors[i].empty()) continue;
            try {
                x[i] = rk4_step(x[i], plan, k, [&cache](double xx, double tt) { return cache.cached_velocity(xx, tt); });
                if (record) out[i].samples.push_back({next, x[i], cache.cached_velocity(x[i], next)});
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
        raise_first();
        if (config.refresh == SliceRefresh::rolling) provider.evict_before(next);
    }
    return out;
}

std::string CrossingReport::describe() const {
    if (ordered) return "trajectory ordering preserved";
    std::ostringstream msg;
    msg << "trajectories " << lower << " and " << upper << " swapped order at sample " << sample_index << " (t = " << t
        << ")";
    return msg.str();
}

CrossingReport check_non_crossing(std::span<const Trajectory> trajectories) {
    CrossingReport report;
    if (trajectories.size() < 2) return report;
    const std::size_t samples = trajectories.front().samples.size();
    for (const auto& tr : trajectories) {
        if (tr.samples.size() != samples) throw std::invalid_argument("trajectories do not share time sampling");
        for (std::size_t s = 0; s < samples; ++s) {
            if (tr.samples[s].t != trajectories.front().samples[s].t)
                throw std::invalid_argument("trajectories do not share time sampling");
        }
    }
    std::vector<std::size_t> order(trajectories.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return trajectories[a].seed < trajectories[b].seed; });
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t r = 0; r + 1 < order.size(); ++r) {
            const auto lo = order[r];
            const auto hi = order[r + 1];
            const bool tied_seeds = trajectories[lo].seed == trajectories[hi].seed;
            const double xl = trajectories[lo].samples[s].x;
            const double xh = trajectories[hi].samples[s].x;
            if (tied_seeds ? xl != xh : xl > xh) {
                report.ordered = false;
                report.sample_index = s;
                report.t = trajectories[lo].samples[s].t;
                report.lower = lo;
                report.upper = hi;
                return report;
            }
        }
    }
    return report;
}

SuperluminalReport superluminal_scan(std::span<const FieldSlice> slices, double c, double min_density_rel) {
    SuperluminalReport report;
    for (const auto& s : slices) {
        const double cutoff = min_density_rel > 0.0 ? min_density_rel * max_abs(s.density) : 0.0;
        const auto& x = s.grids->x();
        for (std::size_t j = 0; j < s.velocity.size(); ++j) {
            if (s.masked(j)) continue;
            if (min_density_rel > 0.0 && !(s.density[j] > cutoff)) continue;
            ++report.scanned_nodes;
            const double ratio = std::abs(s.velocity[j]) / c;
            report.max_speed_ratio = std::max(report.max_speed_ratio, ratio);
            if (ratio >= 1.0) report.cells.push_back({s.t, x[j], s.velocity[j]});
        }
    }
    return report;
}

}  // namespace kgbohm
