#pragma once

// Test-only builders and independent oracles. Nothing here calls into the
// code path it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "kgbohm/canonical.hpp"
#include "kgbohm/grids.hpp"
#include "kgbohm/params.hpp"
#include "kgbohm/wavepacket.hpp"

namespace kgbohm::testing {

/// Natural units, unit width, default domain for p0 > 0 or symmetric for p0 = 0.
inline SimulationParams reference_params(double p0, std::size_t n = 1024) {
    SimulationParams p;
    p.p0 = p0;
    p.n_modes = n;
    if (p0 > 0.0) {
        p.x_min = -40.0;
        p.x_max = 88.0;
    } else {
        p.x_min = -64.0;
        p.x_max = 64.0;
    }
    return p;
}

/// Position-space Gaussian phi(x,0) evaluated in closed form.
inline std::complex<double> gaussian_position(const SimulationParams& p, double x) {
    const double u = x - p.x0;
    const double amp = std::pow(2.0 * std::numbers::pi * p.sigma * p.sigma, -0.25) * std::exp(-u * u / (4.0 * p.sigma * p.sigma));
    return std::polar(amp, p.p0 * u / p.hbar);
}

/// g(p) = (2 pi hbar)^(-1/2) int dx phi(x,0) exp(-i p x / hbar) by a fine
/// Riemann sum over x0 +/- 14 sigma.
inline std::complex<double> gaussian_momentum_by_quadrature(const SimulationParams& prm, double p) {
    const double h = prm.sigma / 400.0;
    const double lo = prm.x0 - 14.0 * prm.sigma;
    const auto steps = static_cast<int>(28.0 * prm.sigma / h);
    std::complex<double> sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double x = lo + i * h;
        sum += gaussian_position(prm, x) * std::polar(1.0, -p * x / prm.hbar);
    }
    return sum * h / std::sqrt(2.0 * std::numbers::pi * prm.hbar);
}

/// exp(-i H t / hbar) for the per-mode Hamilton-form matrix
///   H = [[p^2/2m + mc^2, p^2/2m], [-p^2/2m, -p^2/2m - mc^2]],
/// using H^2 = E^2: exp(-iHt/hbar) = cos(Et/hbar) 1 - i sin(Et/hbar) H / E.
inline std::array<std::array<std::complex<double>, 2>, 2> hamilton_propagator(double p, double t, double hbar, double c,
                                                                             double m) {
    const double kin = p * p / (2.0 * m);
    const double mc2 = m * c * c;
    const double e = std::sqrt(p * p * c * c + mc2 * mc2);
    const double h[2][2] = {{kin + mc2, kin}, {-kin, -kin - mc2}};
    const double cs = std::cos(e * t / hbar);
    const double sn = std::sin(e * t / hbar);
    std::array<std::array<std::complex<double>, 2>, 2> out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = std::complex<double>((i == j) ? cs : 0.0, -sn * h[i][j] / e);
    return out;
}

/// Standard normal quantile by bisection on the closed-form CDF.
inline double normal_quantile(double q) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::sqrt(2.0)) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Canonical spectral state whose position-space field is exactly the unit
/// positive-energy plane wave Psi+ of node k.
inline CanonicalSpectralState plane_wave_plus(GridsPtr grids, std::size_t k) {
    const double mc2 = grids->m() * grids->c() * grids->c();
    const double e = grids->energy()[k];
    const double amp = 1.0 / (grids->plane_wave_norm() * grids->weights()[k]);
    CanonicalSpectralState s{std::vector<std::complex<double>>(grids->size()),
                             std::vector<std::complex<double>>(grids->size()), grids};
    const double norm = 2.0 * std::sqrt(mc2 * e);
    s.phi[k] = amp * (mc2 + e) / norm;
    s.chi[k] = amp * (mc2 - e) / norm;
    return s;
}

}  // namespace kgbohm::testing
