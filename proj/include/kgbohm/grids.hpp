#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kgbohm/params.hpp"

namespace kgbohm {

using cplx = std::complex<double>;

struct DispersionTable {
    std::vector<double> energy;  // E_p = sqrt(p^2 c^2 + m^2 c^4), one per momentum node
};

class FftPlans;

/// Uniform position grid and its FFT-conjugate momentum grid.
///
/// x_j = x_min + j dx, j = 0..N-1 (periodic, x_max excluded)
/// p_k = (k - N/2) dp, k = 0..N-1, dp = 2 pi hbar / (N dx)
///
/// Momentum amplitudes a_k map to position space through
///   f(x) = (2 pi hbar)^(-1/2) sum_k w_k a_k exp(i p_k x / hbar),  w_k = dp,
/// which makes sum_j dx |f_j|^2 == sum_k w_k |a_k|^2 exactly on the grid.
class ConjugateGrids {
public:
    ConjugateGrids(std::size_t n, double x_min, double x_max, double hbar, double c, double m);

    std::size_t size() const { return x_.size(); }
    double dx() const { return dx_; }
    double dp() const { return dp_; }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.front() + dx_ * static_cast<double>(size()); }
    double hbar() const { return hbar_; }
    double c() const { return c_; }
    double m() const { return m_; }
    /// (2 pi hbar)^(-1/2)
    double plane_wave_norm() const { return plane_wave_norm_; }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& p() const { return p_; }
    const std::vector<double>& weights() const { return weights_; }
    const DispersionTable& dispersion() const { return dispersion_; }
    const std::vector<double>& energy() const { return dispersion_.energy; }

    /// Index of the p = 0 node.
    std::size_t zero_mode() const { return size() / 2; }

    void to_position(std::span<const cplx> amplitudes, std::span<cplx> field) const;
    std::vector<cplx> to_position(std::span<const cplx> amplitudes) const;
    void to_momentum(std::span<const cplx> field, std::span<cplx> amplitudes) const;
    std::vector<cplx> to_momentum(std::span<const cplx> field) const;

    /// Spectral d/dx of a sampled periodic field. The unpaired Nyquist node is dropped.
    std::vector<cplx> derivative(std::span<const cplx> field) const;
    std::vector<double> derivative(std::span<const double> field) const;

    /// Spectral antiderivative of the zero-mean part of `field`, anchored to 0 at x_min.
    /// `dropped_mean`, if given, receives the mean that was removed.
    std::vector<double> antiderivative(std::span<const double> field, double* dropped_mean = nullptr) const;

private:
    std::vector<double> x_, p_, weights_;
    DispersionTable dispersion_;
    std::vector<cplx> shift_;  // exp(i p_k x_min / hbar)
    double dx_, dp_, hbar_, c_, m_, plane_wave_norm_;
    std::shared_ptr<const FftPlans> fft_;
};

using GridsPtr = std::shared_ptr<const ConjugateGrids>;

/// Builds grids from params. Throws ConfigError if n_modes is not a power of
/// two, the span is degenerate, or the span is shorter than 12 sigma.
GridsPtr make_conjugate_grids(const SimulationParams& params);

/// Boundary-contamination guard: throws GuardError if `density` exceeds
/// `rel_threshold * max(density)` within `cells` nodes of either edge.
void check_boundary(std::span<const double> density, const char* what, double rel_threshold = 1e-8,
                    std::size_t cells = 5);

enum class BoundaryGuard { enforce, skip };

}  // namespace kgbohm
