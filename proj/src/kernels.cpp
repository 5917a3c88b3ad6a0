#include "kgbohm/kernels.hpp"

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kgbohm::kernels {

namespace {

struct ActiveModes {
    std::vector<double> p, e;
    std::vector<cplx> wg;  // w_k g_k
};

ActiveModes active_modes(const SpectralAmplitudes& g) {
    ActiveModes m;
    const auto& grids = *g.grids;
    for (std::size_t k = 0; k < g.g.size(); ++k) {
        if (g.g[k] == cplx(0.0)) continue;
        m.p.push_back(grids.p()[k]);
        m.e.push_back(grids.energy()[k]);
        m.wg.push_back(grids.weights()[k] * g.g[k]);
    }
    return m;
}

cplx synthesize_one(const ActiveModes& m, double hbar, double norm, double x, double t, TimeDerivative order) {
    cplx sum = 0.0;
    for (std::size_t k = 0; k < m.p.size(); ++k) {
        cplx term = m.wg[k] * std::polar(1.0, (m.p[k] * x - m.e[k] * t) / hbar);
        if (order == TimeDerivative::first) term *= cplx(0.0, -m.e[k] / hbar);
        sum += term;
    }
    return norm * sum;
}

// J(x,t) = c^2/(2 pi hbar) sum_{j,l} w_j w_l (p_j + p_l)/(E_j + E_l) conj(g_l) g_j
//          exp(-i (E_j - E_l) t / hbar) exp(i (p_j - p_l) x / hbar)
CurrentSample current_one(const ActiveModes& m, std::vector<cplx>& a, double hbar, double prefactor, double x,
                          double t) {
    const std::size_t n = m.p.size();
    for (std::size_t k = 0; k < n; ++k) a[k] = m.wg[k] * std::polar(1.0, (m.p[k] * x - m.e[k] * t) / hbar);
    cplx total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double pj = m.p[j];
        const double ej = m.e[j];
        double re = 0.0, im = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            const double kernel = (pj + m.p[l]) / (ej + m.e[l]);
            re += kernel * a[l].real();
            im -= kernel * a[l].imag();
        }
        total += a[j] * cplx(re, im);
    }
    total *= prefactor;
    return {total.real(), total.imag()};
}

double current_prefactor(const SpectralAmplitudes& g) {
    const auto& grids = *g.grids;
    const double norm = grids.plane_wave_norm();
    return grids.c() * grids.c() * norm * norm;
}

}  // namespace

namespace serial {

void synthesize_points(const SpectralAmplitudes& g, double t, TimeDerivative order, std::span<const double> xs,
                       std::span<cplx> out) {
    const auto modes = active_modes(g);
    const double hbar = g.grids->hbar();
    const double norm = g.grids->plane_wave_norm();
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = synthesize_one(modes, hbar, norm, xs[i], t, order);
}

void current_points(const SpectralAmplitudes& g, double t, std::span<const double> xs,
                    std::span<CurrentSample> out) {
    const auto modes = active_modes(g);
    const double hbar = g.grids->hbar();
    const double prefactor = current_prefactor(g);
    std::vector<cplx> scratch(modes.p.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = current_one(modes, scratch, hbar, prefactor, xs[i], t);
}

}  // namespace serial

namespace omp {

void synthesize_points(const SpectralAmplitudes& g, double t, TimeDerivative order, std::span<const double> xs,
                       std::span<cplx> out) {
    const auto modes = active_modes(g);
    const double hbar = g.grids->hbar();
    const double norm = g.grids->plane_wave_norm();
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = synthesize_one(modes, hbar, norm, xs[i], t, order);
}

void current_points(const SpectralAmplitudes& g, double t, std::span<const double> xs,
                    std::span<CurrentSample> out) {
    const auto modes = active_modes(g);
    const double hbar = g.grids->hbar();
    const double prefactor = current_prefactor(g);
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel
    {
        std::vector<cplx> scratch(modes.p.size());
#pragma omp for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = current_one(modes, scratch, hbar, prefactor, xs[i], t);
    }
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace kgbohm::kernels
