#include "kgbohm/canonical.hpp"

#include <algorithm>
#include <cmath>

namespace kgbohm {

FWMatrix build_fw(const ConjugateGrids& grids) {
    const double mc2 = grids.m() * grids.c() * grids.c();
    const auto& e = grids.energy();
    FWMatrix fw;
    fw.u.resize(e.size());
    fw.u_inv.resize(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double d = std::sqrt(4.0 * mc2 * e[k]);
        const double diag = (mc2 + e[k]) / d;
        const double off = (e[k] - mc2) / d;
        fw.u[k] = {{{diag, off}, {off, diag}}};
        fw.u_inv[k] = {{{diag, -off}, {-off, diag}}};
    }
    return fw;
}

double pseudo_unitarity_residual(const FWMatrix& fw) {
    constexpr std::array<double, 2> tau3{1.0, -1.0};
    double worst = 0.0;
    for (const auto& u : fw.u) {
        double frob = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                // (tau3 U^T tau3 U)_ij = tau3_i sum_k U_ki tau3_k U_kj
                double s = 0.0;
                for (int k = 0; k < 2; ++k) s += u[k][i] * tau3[k] * u[k][j];
                s *= tau3[i];
                const double d = s - (i == j ? 1.0 : 0.0);
                frob += d * d;
            }
        }
        worst = std::max(worst, std::sqrt(frob));
    }
    return worst;
}

double CanonicalSpectralState::charge() const {
    const auto& w = grids->weights();
    double s = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) s += w[k] * (std::norm(phi[k]) - std::norm(chi[k]));
    return s;
}

CanonicalSpectralState lift_initial(const SpectralAmplitudes& g) {
    return {g.g, std::vector<cplx>(g.g.size()), g.grids};
}

CanonicalSpectralState evolve_canonical_spectral(const CanonicalSpectralState& state, const FWMatrix& fw, double t) {
    const auto& e = state.grids->energy();
    const double hbar = state.grids->hbar();
    CanonicalSpectralState out{std::vector<cplx>(state.phi.size()), std::vector<cplx>(state.chi.size()), state.grids};
    for (std::size_t k = 0; k < e.size(); ++k) {
        const auto& u = fw.u[k];
        const auto& ui = fw.u_inv[k];
        const cplx phase = std::polar(1.0, -e[k] * t / hbar);
        const cplx particle = (u[0][0] * state.phi[k] + u[0][1] * state.chi[k]) * phase;
        const cplx antiparticle = (u[1][0] * state.phi[k] + u[1][1] * state.chi[k]) * std::conj(phase);
        out.phi[k] = ui[0][0] * particle + ui[0][1] * antiparticle;
        out.chi[k] = ui[1][0] * particle + ui[1][1] * antiparticle;
    }
    return out;
}

SpinorField evolve_canonical(const CanonicalSpectralState& state, const FWMatrix& fw, double t, BoundaryGuard guard) {
    const auto evolved = evolve_canonical_spectral(state, fw, t);
    SpinorField out{t, state.grids, state.grids->to_position(evolved.phi), state.grids->to_position(evolved.chi)};
    if (guard == BoundaryGuard::enforce) {
        std::vector<double> magnitude(out.phi.size());
        for (std::size_t j = 0; j < magnitude.size(); ++j)
            magnitude[j] = std::norm(out.phi[j]) + std::norm(out.chi[j]);
        check_boundary(magnitude, "evolve_canonical");
    }
    return out;
}

FieldSlice charge_density(const SpinorField& field) {
    FieldSlice out;
    out.t = field.t;
    out.grids = field.grids;
    out.density.resize(field.phi.size());
    for (std::size_t j = 0; j < field.phi.size(); ++j) out.density[j] = std::norm(field.phi[j]) - std::norm(field.chi[j]);
    return out;
}

FieldSlice charge_current(const SpinorField& field) {
    const std::size_t n = field.phi.size();
    std::vector<cplx> psi(n);
    for (std::size_t j = 0; j < n; ++j) psi[j] = field.phi[j] + field.chi[j];
    const auto dpsi = field.grids->derivative(std::span<const cplx>(psi));
    const double scale = field.grids->hbar() / field.grids->m();

    FieldSlice out;
    out.t = field.t;
    out.grids = field.grids;
    out.current.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.current[j] = scale * (std::conj(psi[j]) * dpsi[j]).imag();
    return out;
}

FieldSlice canonical_velocity(const FieldSlice& density, const FieldSlice& current, double eps_rel) {
    return velocity_field(density, current, eps_rel);
}

}  // namespace kgbohm
