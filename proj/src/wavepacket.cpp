#include "kgbohm/wavepacket.hpp"

#include <cmath>
#include <sstream>

#include "kgbohm/errors.hpp"

namespace kgbohm {

double SpectralAmplitudes::norm() const {
    double s = 0.0;
    const auto& w = grids->weights();
    for (std::size_t k = 0; k < g.size(); ++k) s += w[k] * std::norm(g[k]);
    return s;
}

SpectralAmplitudes gaussian_spectral(const SimulationParams& params, GridsPtr grids) {
    const double sp = params.sigma_p();
    const auto& p = grids->p();
    const double p_lo = p.front();
    const double p_hi = p.back();
    if (params.p0 - 6.0 * sp < p_lo || params.p0 + 6.0 * sp > p_hi) {
        std::ostringstream msg;
        msg << "momentum grid [" << p_lo << ", " << p_hi << "] does not cover p0 +/- 6 sigma_p = [" << params.p0 - 6.0 * sp
            << ", " << params.p0 + 6.0 * sp << "]";
        throw ConfigError(msg.str());
    }

    // Fourier transform of the position Gaussian centered at x0 with phase p0 (x - x0):
    // g(p) ~ exp(-(p - p0)^2 / (4 sigma_p^2) - i p x0 / hbar)
    SpectralAmplitudes out{std::vector<cplx>(grids->size()), grids};
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double dpk = p[k] - params.p0;
        out.g[k] = std::polar(std::exp(-dpk * dpk / (4.0 * sp * sp)), -p[k] * params.x0 / params.hbar);
    }
    const double scale = 1.0 / std::sqrt(out.norm());
    for (auto& v : out.g) v *= scale;
    return out;
}

SpectralAmplitudes single_mode(GridsPtr grids, std::size_t node, cplx amplitude) {
    SpectralAmplitudes out{std::vector<cplx>(grids->size()), std::move(grids)};
    out.g.at(node) = amplitude;
    return out;
}

std::vector<cplx> evolved_amplitudes(const SpectralAmplitudes& g, double t, TimeDerivative order) {
    const auto& e = g.grids->energy();
    const double hbar = g.grids->hbar();
    std::vector<cplx> a(g.g.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = g.g[k] * std::polar(1.0, -e[k] * t / hbar);
        if (order == TimeDerivative::first) a[k] *= cplx(0.0, -e[k] / hbar);
    }
    return a;
}

cplx synthesize(const SpectralAmplitudes& g, double x, double t, TimeDerivative order) {
    const auto& grids = *g.grids;
    const auto& p = grids.p();
    const auto& e = grids.energy();
    const auto& w = grids.weights();
    const double hbar = grids.hbar();
    cplx sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (g.g[k] == cplx(0.0)) continue;
        cplx term = w[k] * g.g[k] * std::polar(1.0, (p[k] * x - e[k] * t) / hbar);
        if (order == TimeDerivative::first) term *= cplx(0.0, -e[k] / hbar);
        sum += term;
    }
    return grids.plane_wave_norm() * sum;
}

std::vector<cplx> synthesize_on_grid(const SpectralAmplitudes& g, double t, TimeDerivative order) {
    return g.grids->to_position(evolved_amplitudes(g, t, order));
}

double grid_norm(std::span<const cplx> field, double dx) {
    double s = 0.0;
    for (const auto& v : field) s += std::norm(v);
    return s * dx;
}

}  // namespace kgbohm
