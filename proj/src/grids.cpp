#include "kgbohm/grids.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "kgbohm/errors.hpp"

namespace kgbohm {

ConjugateGrids::ConjugateGrids(std::size_t n, double x_min, double x_max, double hbar, double c, double m)
    : hbar_(hbar), c_(c), m_(m) {
    if (!is_power_of_two(n) || n < 2)
        throw ConfigError("n_modes must be a power of two, got " + std::to_string(n));
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw ConfigError("x_span must be nondegenerate");
    if (!(hbar > 0.0) || !(c > 0.0) || !(m > 0.0)) throw ConfigError("hbar, c, m must be > 0");

    const auto nd = static_cast<double>(n);
    dx_ = (x_max - x_min) / nd;
    dp_ = 2.0 * std::numbers::pi * hbar / (nd * dx_);
    plane_wave_norm_ = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);

    x_.resize(n);
    p_.resize(n);
    weights_.assign(n, dp_);
    dispersion_.energy.resize(n);
    shift_.resize(n);
    const double mc2 = m * c * c;
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t j = 0; j < n; ++j) {
        x_[j] = x_min + static_cast<double>(j) * dx_;
        p_[j] = static_cast<double>(static_cast<std::ptrdiff_t>(j) - half) * dp_;
        dispersion_.energy[j] = std::sqrt(p_[j] * p_[j] * c * c + mc2 * mc2);
        shift_[j] = std::polar(1.0, p_[j] * x_min / hbar);
    }
    fft_ = std::make_shared<FftPlans>(n);
}

void ConjugateGrids::to_position(std::span<const cplx> amplitudes, std::span<cplx> field) const {
    const std::size_t n = size();
    std::vector<cplx> shifted(n);
    for (std::size_t k = 0; k < n; ++k) shifted[k] = amplitudes[k] * shift_[k];
    fft_->backward(shifted.data(), field.data());
    const double scale = plane_wave_norm_ * dp_;
    for (std::size_t j = 0; j < n; ++j) field[j] *= (j % 2 == 0) ? scale : -scale;
}

std::vector<cplx> ConjugateGrids::to_position(std::span<const cplx> amplitudes) const {
    std::vector<cplx> out(size());
    to_position(amplitudes, out);
    return out;
}

void ConjugateGrids::to_momentum(std::span<const cplx> field, std::span<cplx> amplitudes) const {
    const std::size_t n = size();
    std::vector<cplx> alternated(n);
    for (std::size_t j = 0; j < n; ++j) alternated[j] = (j % 2 == 0) ? field[j] : -field[j];
    fft_->forward(alternated.data(), amplitudes.data());
    const double scale = plane_wave_norm_ * dx_;
    for (std::size_t k = 0; k < n; ++k) amplitudes[k] *= scale * std::conj(shift_[k]);
}

std::vector<cplx> ConjugateGrids::to_momentum(std::span<const cplx> field) const {
    std::vector<cplx> out(size());
    to_momentum(field, out);
    return out;
}

std::vector<cplx> ConjugateGrids::derivative(std::span<const cplx> field) const {
    auto a = to_momentum(field);
    a[0] = 0.0;  // Nyquist node has no +p partner
    for (std::size_t k = 1; k < a.size(); ++k) a[k] *= cplx(0.0, p_[k] / hbar_);
    return to_position(a);
}

std::vector<double> ConjugateGrids::derivative(std::span<const double> field) const {
    std::vector<cplx> f(field.begin(), field.end());
    const auto d = derivative(std::span<const cplx>(f));
    std::vector<double> out(d.size());
    std::transform(d.begin(), d.end(), out.begin(), [](cplx z) { return z.real(); });
    return out;
}

std::vector<double> ConjugateGrids::antiderivative(std::span<const double> field, double* dropped_mean) const {
    std::vector<cplx> f(field.begin(), field.end());
    auto a = to_momentum(f);
    const std::size_t k0 = zero_mode();
    if (dropped_mean) {
        // a_0 = C dx sum_j f_j; mean over the period is a_0 / (C L)
        *dropped_mean = a[k0].real() / (plane_wave_norm_ * dx_ * static_cast<double>(size()));
    }
    a[0] = 0.0;
    a[k0] = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (k != k0) a[k] /= cplx(0.0, p_[k] / hbar_);
    }
    const auto g = to_position(a);
    std::vector<double> out(g.size());
    const double anchor = g[0].real();
    for (std::size_t j = 0; j < g.size(); ++j) out[j] = g[j].real() - anchor;
    return out;
}

GridsPtr make_conjugate_grids(const SimulationParams& params) {
    if (!is_power_of_two(params.n_modes))
        throw ConfigError("n_modes must be a power of two, got " + std::to_string(params.n_modes));
    if (!(params.x_max > params.x_min)) throw ConfigError("x_span must be nondegenerate");
    if (params.x_max - params.x_min < 12.0 * params.sigma) {
        std::ostringstream msg;
        msg << "x_span length " << (params.x_max - params.x_min) << " is shorter than 12 sigma = "
            << 12.0 * params.sigma;
        throw ConfigError(msg.str());
    }
    return std::make_shared<const ConjugateGrids>(params.n_modes, params.x_min, params.x_max, params.hbar,
                                                  params.c, params.m);
}

void check_boundary(std::span<const double> density, const char* what, double rel_threshold, std::size_t cells) {
    if (density.empty()) return;
    double peak = 0.0;
    for (double d : density) peak = std::max(peak, std::abs(d));
    if (peak == 0.0) return;
    const std::size_t n = density.size();
    const std::size_t band = std::min(cells, n);
    double edge = 0.0;
    for (std::size_t j = 0; j < band; ++j) {
        edge = std::max(edge, std::abs(density[j]));
        edge = std::max(edge, std::abs(density[n - 1 - j]));
    }
    if (edge > rel_threshold * peak) {
        std::ostringstream msg;
        msg << what << ": boundary contamination, edge density " << edge << " exceeds " << rel_threshold
            << " x peak " << peak;
        throw GuardError(msg.str());
    }
}

}  // namespace kgbohm
