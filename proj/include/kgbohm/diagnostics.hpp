#pragma once

// Measured residuals for the conservation laws and cross-checks. Shared by
// the `validate` command, the run summary and the acceptance suite.

#include <cstdint>
#include <span>
#include <vector>

#include "kgbohm/canonical.hpp"
#include "kgbohm/uncoupled.hpp"

namespace kgbohm::diagnostics {

struct ContinuityResidual {
    double max_residual{0.0};  // max_x |d_t rho + d_x j|
    double max_flux_div{0.0};  // max_x |d_x j|
    double ratio() const { return max_flux_div > 0.0 ? max_residual / max_flux_div : 0.0; }
};

/// Centered difference in t with step dt_fd, spectral d_x of the current.
ContinuityResidual canonical_continuity(const CanonicalSpectralState& state, const FWMatrix& fw, double t, double dt_fd);
ContinuityResidual uncoupled_continuity(const UncoupledState& state, double t, double dt_fd);

struct OracleComparison {
    double rel_linf{0.0};       // max |J_fast - J_direct| / max |J_direct| over the sampled nodes
    double max_imag_residue{0.0};
    std::vector<std::size_t> nodes;
};

/// Compares current_u_fast with the double sum at `count` nodes drawn with a
/// fixed seed from the nodes where density > 1e-6 * peak.
OracleComparison oracle_equivalence(const UncoupledState& state, double t, std::size_t count = 16,
                                    std::uint64_t seed = 20240607);

/// sum_j dx J_j
double integrated_current(const FieldSlice& slice);

/// sum_j dx rho_j
double integrated_density(const FieldSlice& slice);

}  // namespace kgbohm::diagnostics
