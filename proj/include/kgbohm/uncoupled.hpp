#pragma once

// Positive-energy (Salpeter) sector of the uncoupled representation:
// i hbar d/dt phi = sqrt(P^2 c^2 + m^2 c^4) phi, with density |phi|^2 and the
// nonlocal current
//   J(x,t) = c^2 int dk dp (p + k)/(E_p + E_k) g*(k) g(p) e^{-i(E_p - E_k)t/hbar} e^{i(p - k)x/hbar}.

#include <span>
#include <vector>

#include "kgbohm/field.hpp"
#include "kgbohm/kernels.hpp"
#include "kgbohm/wavepacket.hpp"

namespace kgbohm {

struct UncoupledState {
    SpectralAmplitudes g;

    const ConjugateGrids& grids() const { return *g.grids; }
};

ScalarField evolve_uncoupled(const UncoupledState& state, double t, BoundaryGuard guard = BoundaryGuard::enforce);

/// rho = |phi|^2, nonnegative at every node.
FieldSlice density_u(const ScalarField& field);

/// O(N^2) double sum at one point. The real part is J; the imaginary part is
/// the rounding residue of the Hermitian kernel.
kernels::CurrentSample current_u_direct(const UncoupledState& state, double x, double t);

/// The double sum at many points, parallel over points.
std::vector<kernels::CurrentSample> current_u_direct(const UncoupledState& state, std::span<const double> xs, double t);

/// J on the whole grid from the continuity equation: d_t rho = 2 Re[phi* d_t phi]
/// is integrated spectrally in x and anchored to J = 0 at the left edge.
/// The returned slice carries both density and current. With the guard
/// enforced, throws GuardError if the left-edge density is above 1e-8 of peak.
FieldSlice current_u_fast(const UncoupledState& state, double t, BoundaryGuard guard = BoundaryGuard::enforce);

/// <J> = sum_k w_k |g_k|^2 p_k c^2 / E_k, independent of time.
double average_current(const UncoupledState& state);

FieldSlice uncoupled_velocity(const FieldSlice& density, const FieldSlice& current, double eps_rel = 1e-12);

}  // namespace kgbohm
