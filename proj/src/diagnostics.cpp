#include "kgbohm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace kgbohm::diagnostics {

namespace {

ContinuityResidual residual(const std::vector<double>& rho_minus, const std::vector<double>& rho_plus,
                            const std::vector<double>& div_j, double dt_fd) {
    ContinuityResidual r;
    for (std::size_t j = 0; j < div_j.size(); ++j) {
        const double drho = (rho_plus[j] - rho_minus[j]) / (2.0 * dt_fd);
        r.max_residual = std::max(r.max_residual, std::abs(drho + div_j[j]));
        r.max_flux_div = std::max(r.max_flux_div, std::abs(div_j[j]));
    }
    return r;
}

}  // namespace

ContinuityResidual canonical_continuity(const CanonicalSpectralState& state, const FWMatrix& fw, double t, double dt_fd) {
    const auto& grids = *state.grids;
    const auto j = charge_current(evolve_canonical(state, fw, t));
    const auto div_j = grids.derivative(std::span<const double>(j.current));
    const auto minus = charge_density(evolve_canonical(state, fw, t - dt_fd, BoundaryGuard::skip));
    const auto plus = charge_density(evolve_canonical(state, fw, t + dt_fd, BoundaryGuard::skip));
    return residual(minus.density, plus.density, div_j, dt_fd);
}

ContinuityResidual uncoupled_continuity(const UncoupledState& state, double t, double dt_fd) {
    const auto& grids = state.grids();
    const auto j = current_u_fast(state, t);
    const auto div_j = grids.derivative(std::span<const double>(j.current));
    const auto minus = density_u(evolve_uncoupled(state, t - dt_fd, BoundaryGuard::skip));
    const auto plus = density_u(evolve_uncoupled(state, t + dt_fd, BoundaryGuard::skip));
    return residual(minus.density, plus.density, div_j, dt_fd);
}

OracleComparison oracle_equivalence(const UncoupledState& state, double t, std::size_t count, std::uint64_t seed) {
    const auto fast = current_u_fast(state, t);
    const double peak = max_abs(fast.density);
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < fast.density.size(); ++j)
        if (fast.density[j] > 1e-6 * peak) support.push_back(j);

    OracleComparison out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, support.size() - 1);
    for (std::size_t i = 0; i < count; ++i) out.nodes.push_back(support[pick(rng)]);

    std::vector<double> xs;
    for (auto j : out.nodes) xs.push_back(fast.grids->x()[j]);
    const auto direct = current_u_direct(state, xs, t);

    double max_diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(fast.current[out.nodes[i]] - direct[i].value));
        scale = std::max(scale, std::abs(direct[i].value));
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(direct[i].imag_residue));
    }
    out.rel_linf = scale > 0.0 ? max_diff / scale : max_diff;
    return out;
}

double integrated_current(const FieldSlice& slice) {
    double s = 0.0;
    for (double v : slice.current) s += v;
    return s * slice.grids->dx();
}

double integrated_density(const FieldSlice& slice) {
    double s = 0.0;
    for (double v : slice.density) s += v;
    return s * slice.grids->dx();
}

}  // namespace kgbohm::diagnostics
