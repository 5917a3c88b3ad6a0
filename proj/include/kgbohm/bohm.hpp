#pragma once

// de Broglie-Bohm trajectories dx/dt = v(x(t), t) on a gridded velocity field.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgbohm/field.hpp"
#include "kgbohm/uncoupled.hpp"

namespace kgbohm {

struct TrajectorySample {
    double t;
    double x;
    double v;
};

struct Trajectory {
    double seed{0.0};
    std::vector<TrajectorySample> samples;
};

enum class IntegratorScheme { rk4 };

/// keep_all retains every computed slice; rolling drops slices older than the
/// current step once every trajectory has advanced past them.
enum class SliceRefresh { keep_all, rolling };

struct IntegratorConfig {
    double dt{1e-2};
    IntegratorScheme scheme{IntegratorScheme::rk4};
    SliceRefresh refresh{SliceRefresh::rolling};
    std::size_t output_stride{1};  // record every n-th step (the final step is always recorded)
};

/// Piecewise-linear cumulative distribution of a density slice (trapezoid rule
/// between nodes, starting at 0 on the first node).
class DensityCdf {
public:
    explicit DensityCdf(const FieldSlice& density);

    double total() const { return cdf_.back(); }
    double at(double x) const;
    /// Smallest x with at(x) == q * total().
    double quantile(double q) const;

private:
    std::vector<double> x_;
    std::vector<double> cdf_;
};

/// Seeds at the (k - 1/2)/n quantiles of rho0, k = 1..n.
/// Throws std::invalid_argument if n == 0 or n exceeds the number of grid nodes.
std::vector<double> sample_initial_positions(const FieldSlice& rho0, std::size_t n);

/// Velocity field evaluated off-grid by linear interpolation in x over slices
/// cached per time. The cache is populated by one writer (prepare / velocity)
/// and may then be read concurrently through cached_velocity.
class VelocityProvider {
public:
    /// Must return a slice with velocity and mask filled in.
    using SliceFn = std::function<FieldSlice(double t)>;

    explicit VelocityProvider(SliceFn fn, std::size_t guard_cells = 5);

    /// Computes the slices for all missing times (in parallel).
    void prepare(std::span<const double> times);
    /// Drops cached slices with time < t.
    void evict_before(double t);
    std::size_t cached_slices() const { return cache_.size(); }

    /// Lazily computes the slice if needed.
    double velocity(double x, double t);
    /// Requires the slice to be cached; throws std::logic_error otherwise.
    /// Throws GuardError outside the domain interior or next to a masked node.
    double cached_velocity(double x, double t) const;

    const FieldSlice& slice(double t);

private:
    SliceFn fn_;
    std::size_t guard_cells_;
    std::map<double, FieldSlice> cache_;
};

/// Uncoupled-representation provider: current_u_fast + masking at eps_rel.
VelocityProvider make_uncoupled_provider(UncoupledState state, double eps_rel = 1e-10);

/// Classical RK4 on dx/dt = v(x, t) from t = 0 to t_final. The step is
/// shrunk so it divides t_final evenly. Throws GuardError if the path enters a
/// masked region or leaves the domain interior.
Trajectory integrate_trajectory(VelocityProvider& provider, double seed, double t_final, const IntegratorConfig& config);

/// All seeds advanced in lockstep, sharing one slice per stage time; the
/// per-step trajectory updates run in parallel.
std::vector<Trajectory> integrate_ensemble(VelocityProvider& provider, std::span<const double> seeds, double t_final,
                                           const IntegratorConfig& config);

struct CrossingReport {
    bool ordered{true};
    std::size_t sample_index{0};
    double t{0.0};
    std::size_t lower{0};  // trajectory ids whose order flipped
    std::size_t upper{0};
    std::string describe() const;
};

/// True iff the x-ordering of trajectories (by seed) is the same at every sample.
/// Throws std::invalid_argument if the trajectories do not share time sampling.
CrossingReport check_non_crossing(std::span<const Trajectory> trajectories);

struct SuperluminalCell {
    double t;
    double x;
    double v;
};

struct SuperluminalReport {
    std::vector<SuperluminalCell> cells;  // unmasked nodes with |v| >= c
    double max_speed_ratio{0.0};          // max |v|/c over the scanned nodes
    std::size_t scanned_nodes{0};
};

/// Scans unmasked nodes; when min_density_rel > 0 only nodes with density above
/// min_density_rel * (peak density of that slice) are considered.
SuperluminalReport superluminal_scan(std::span<const FieldSlice> slices, double c, double min_density_rel = 0.0);

}  // namespace kgbohm
