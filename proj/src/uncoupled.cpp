#include "kgbohm/uncoupled.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kgbohm/errors.hpp"

namespace kgbohm {

ScalarField evolve_uncoupled(const UncoupledState& state, double t, BoundaryGuard guard) {
    ScalarField out{t, state.g.grids, synthesize_on_grid(state.g, t)};
    if (guard == BoundaryGuard::enforce) {
        std::vector<double> rho(out.values.size());
        std::transform(out.values.begin(), out.values.end(), rho.begin(), [](cplx z) { return std::norm(z); });
        check_boundary(rho, "evolve_uncoupled");
    }
    return out;
}

FieldSlice density_u(const ScalarField& field) {
    FieldSlice out;
    out.t = field.t;
    out.grids = field.grids;
    out.density.resize(field.values.size());
    std::transform(field.values.begin(), field.values.end(), out.density.begin(), [](cplx z) { return std::norm(z); });
    return out;
}

kernels::CurrentSample current_u_direct(const UncoupledState& state, double x, double t) {
    kernels::CurrentSample out{};
    const double xs[] = {x};
    kernels::serial::current_points(state.g, t, xs, std::span(&out, 1));
    return out;
}

std::vector<kernels::CurrentSample> current_u_direct(const UncoupledState& state, std::span<const double> xs, double t) {
    std::vector<kernels::CurrentSample> out(xs.size());
    kernels::omp::current_points(state.g, t, xs, out);
    return out;
}

FieldSlice current_u_fast(const UncoupledState& state, double t, BoundaryGuard guard) {
    const auto phi = synthesize_on_grid(state.g, t);
    const auto dphi = synthesize_on_grid(state.g, t, TimeDerivative::first);
    const std::size_t n = phi.size();

    FieldSlice out;
    out.t = t;
    out.grids = state.g.grids;
    out.density.resize(n);
    std::vector<double> drho_dt(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.density[j] = std::norm(phi[j]);
        drho_dt[j] = 2.0 * (std::conj(phi[j]) * dphi[j]).real();
    }

    if (guard == BoundaryGuard::enforce) {
        const double peak = max_abs(out.density);
        const std::size_t band = std::min<std::size_t>(5, n);
        const double edge = *std::max_element(out.density.begin(), out.density.begin() + band);
        if (edge > 1e-8 * peak) {
            std::ostringstream msg;
            msg << "current_u_fast: left-edge density " << edge << " exceeds 1e-8 x peak " << peak
                << "; the J = 0 anchor is invalid";
            throw GuardError(msg.str());
        }
    }

    auto integral = state.g.grids->antiderivative(drho_dt);
    out.current.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.current[j] = -integral[j];
    return out;
}

double average_current(const UncoupledState& state) {
    const auto& grids = state.grids();
    const auto& p = grids.p();
    const auto& e = grids.energy();
    const auto& w = grids.weights();
    const double c2 = grids.c() * grids.c();
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += w[k] * std::norm(state.g.g[k]) * p[k] * c2 / e[k];
    return s;
}

FieldSlice uncoupled_velocity(const FieldSlice& density, const FieldSlice& current, double eps_rel) {
    return velocity_field(density, current, eps_rel);
}

}  // namespace kgbohm
