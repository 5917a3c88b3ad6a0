#pragma once

#include <complex>
#include <span>
#include <vector>

#include "kgbohm/grids.hpp"
#include "kgbohm/params.hpp"

namespace kgbohm {

/// Complex amplitudes g(p_k) on the momentum grid. Immutable once built;
/// the state's representation for all times.
struct SpectralAmplitudes {
    std::vector<cplx> g;
    GridsPtr grids;

    /// sum_k w_k |g_k|^2
    double norm() const;
};

enum class TimeDerivative { none = 0, first = 1 };

/// Gaussian initial state built analytically in momentum space and
/// renormalized on the grid. Throws ConfigError if the momentum grid does not
/// cover p0 +/- 6 sigma_p.
SpectralAmplitudes gaussian_spectral(const SimulationParams& params, GridsPtr grids);

/// Amplitudes carrying one nonzero node; the rest of the array is zero.
SpectralAmplitudes single_mode(GridsPtr grids, std::size_t node, cplx amplitude = 1.0);

/// g_k exp(-i E_k t / hbar), times (-i E_k / hbar) for the first time derivative.
std::vector<cplx> evolved_amplitudes(const SpectralAmplitudes& g, double t,
                                     TimeDerivative order = TimeDerivative::none);

/// Off-grid quadrature of the spectral superposition
///   phi(x,t) = (2 pi hbar)^(-1/2) sum_k w_k g_k exp(-i (E_k t - p_k x) / hbar)
/// or its time derivative.
cplx synthesize(const SpectralAmplitudes& g, double x, double t, TimeDerivative order = TimeDerivative::none);

/// The same superposition on every grid node, by FFT.
std::vector<cplx> synthesize_on_grid(const SpectralAmplitudes& g, double t,
                                     TimeDerivative order = TimeDerivative::none);

/// sum_j dx |f_j|^2
double grid_norm(std::span<const cplx> field, double dx);

}  // namespace kgbohm
