#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "kgbohm/canonical.hpp"
#include "kgbohm/diagnostics.hpp"
#include "kgbohm/run.hpp"
#include "kgbohm/uncoupled.hpp"

namespace kgbohm {

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void ValidationReport::print(std::ostream& os) const {
    for (const auto& c : checks) {
        char line[160];
        std::snprintf(line, sizeof line, "%s  %-36s measured %.3e  bound %.1e\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.measured, c.bound);
        os << line;
    }
    os << (passed() ? "all checks passed\n" : "validation FAILED\n");
}

ValidationReport validate(const ValidateOptions& options) {
    ValidationReport report;
    auto check = [&report](std::string name, double measured, double bound) {
        report.checks.push_back({std::move(name), measured, bound, measured < bound});
    };

    SimulationParams moving;
    moving.p0 = 3.0;
    moving.n_modes = options.n_modes;
    moving.x_min = -40.0;
    moving.x_max = 88.0;
    const auto grids = make_conjugate_grids(moving);
    const auto g = gaussian_spectral(moving, grids);

    const auto fw = build_fw(*grids);
    check("pseudo_unitarity", pseudo_unitarity_residual(fw), 1e-12);
    {
        const auto& u0 = fw.u[grids->zero_mode()];
        const double dev = std::abs(u0[0][0] - 1.0) + std::abs(u0[1][1] - 1.0) + std::abs(u0[0][1]) + std::abs(u0[1][0]);
        check("fw_identity_at_rest", dev, 1e-14);
    }

    const auto canonical = lift_initial(g);
    const UncoupledState uncoupled{g};
    const double times[] = {0.0, 1.0, 2.0};

    double charge_drift = 0.0, norm_drift = 0.0, cont_c = 0.0, cont_u = 0.0;
    double oracle = 0.0, imag = 0.0, avj_int = 0.0, avj_const = 0.0;
    const double avj = average_current(uncoupled);
    for (double t : times) {
        charge_drift = std::max(charge_drift, std::abs(evolve_canonical_spectral(canonical, fw, t).charge() - 1.0));
        const auto slice = current_u_fast(uncoupled, t);
        norm_drift = std::max(norm_drift, std::abs(diagnostics::integrated_density(slice) - 1.0));
        avj_int = std::max(avj_int, std::abs(diagnostics::integrated_current(slice) - avj));
        cont_c = std::max(cont_c, diagnostics::canonical_continuity(canonical, fw, t, options.continuity_dt).ratio());
        cont_u = std::max(cont_u, diagnostics::uncoupled_continuity(uncoupled, t, options.continuity_dt).ratio());
        const auto cmp = diagnostics::oracle_equivalence(uncoupled, t);
        oracle = std::max(oracle, cmp.rel_linf);
        imag = std::max(imag, cmp.max_imag_residue);
        avj_const = std::max(avj_const, std::abs(diagnostics::integrated_current(slice) -
                                                 diagnostics::integrated_current(current_u_fast(uncoupled, 0.0))));
    }
    check("canonical_charge_drift", charge_drift, 1e-10);
    check("uncoupled_norm_drift", norm_drift, 1e-10);
    check("canonical_continuity", cont_c, options.continuity_tol);
    check("uncoupled_continuity", cont_u, options.continuity_tol);
    check("oracle_equivalence", oracle, options.oracle_tol);
    check("oracle_imag_residue", imag, 1e-10);
    check("average_current_identity", avj_int, 1e-8);
    check("average_current_constancy", avj_const, 1e-8);

    // Packet at rest: J odd about x0 on a grid symmetric about x0.
    SimulationParams rest;
    rest.p0 = 0.0;
    rest.n_modes = options.n_modes;
    rest.x_min = -64.0;
    rest.x_max = 64.0;
    const auto rest_grids = make_conjugate_grids(rest);
    const UncoupledState at_rest{gaussian_spectral(rest, rest_grids)};
    double parity = 0.0;
    for (double t : times) {
        const auto slice = current_u_fast(at_rest, t);
        const std::size_t n = slice.current.size();
        for (std::size_t j = 1; j < n; ++j) parity = std::max(parity, std::abs(slice.current[j] + slice.current[n - j]));
    }
    check("current_parity_at_rest", parity, 1e-8);
    return report;
}

}  // namespace kgbohm
