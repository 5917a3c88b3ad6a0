#pragma once

// Two-component Hamilton (Feshbach-Villars) form of the free Klein-Gordon
// equation, i hbar d/dt Psi = [(tau3 + i tau2) P^2/2m + tau3 m c^2] Psi,
// with Psi = (phi, chi), psi = phi + chi, and the canonical charge density
// and current.

#include <array>
#include <vector>

#include "kgbohm/field.hpp"
#include "kgbohm/wavepacket.hpp"

namespace kgbohm {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Per-node Foldy-Wouthuysen matrix
///   U(p) = [(mc^2 + E_p) - tau1 (mc^2 - E_p)] / sqrt(4 mc^2 E_p)
/// and its pseudo-inverse U^-1 = tau3 U^T tau3.
struct FWMatrix {
    std::vector<Mat2> u;
    std::vector<Mat2> u_inv;
};

FWMatrix build_fw(const ConjugateGrids& grids);

/// max_k || tau3 U_k^T tau3 U_k - 1 ||_F
double pseudo_unitarity_residual(const FWMatrix& fw);

/// Momentum-space amplitudes of (phi, chi).
struct CanonicalSpectralState {
    std::vector<cplx> phi;
    std::vector<cplx> chi;
    GridsPtr grids;

    /// sum_k w_k (|phi_k|^2 - |chi_k|^2)
    double charge() const;
};

/// (phi, chi) = (g, 0): a positive-charge initial state.
CanonicalSpectralState lift_initial(const SpectralAmplitudes& g);

/// Psi(p, t) = U^-1 diag(exp(-i E t/hbar), exp(+i E t/hbar)) U Psi(p, 0), per node.
CanonicalSpectralState evolve_canonical_spectral(const CanonicalSpectralState& state, const FWMatrix& fw, double t);

/// Evolves and transforms both components to position space. With the guard
/// enforced, throws GuardError if |phi|^2 + |chi|^2 reaches the domain edges.
SpinorField evolve_canonical(const CanonicalSpectralState& state, const FWMatrix& fw, double t,
                             BoundaryGuard guard = BoundaryGuard::enforce);

/// rho = |phi|^2 - |chi|^2 (indefinite).
FieldSlice charge_density(const SpinorField& field);

/// j = (hbar/m) Im[psi* d_x psi], psi = phi + chi, with a spectral d_x.
FieldSlice charge_current(const SpinorField& field);

/// v = j / rho with masking below eps_rel * max|rho|. No clipping.
FieldSlice canonical_velocity(const FieldSlice& density, const FieldSlice& current, double eps_rel = 1e-12);

}  // namespace kgbohm
