#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kgbohm/bohm.hpp"
#include "kgbohm/errors.hpp"
#include "support.hpp"

using namespace kgbohm;
using kgbohm::testing::reference_params;

namespace {

UncoupledState packet(double p0, std::size_t n = 1024) {
    const auto prm = reference_params(p0, n);
    return {gaussian_spectral(prm, make_conjugate_grids(prm))};
}

std::vector<Trajectory> rest_ensemble(std::size_t seeds, double t_final, double dt) {
    const auto rest = packet(0.0);
    auto provider = make_uncoupled_provider(rest);
    const auto x0 = sample_initial_positions(density_u(evolve_uncoupled(rest, 0.0)), seeds);
    IntegratorConfig cfg;
    cfg.dt = dt;
    return integrate_ensemble(provider, x0, t_final, cfg);
}

FieldSlice constant_velocity(double v, std::size_t n = 64) {
    FieldSlice s;
    s.grids = std::make_shared<const ConjugateGrids>(n, -1.0, 1.0, 1.0, 1.0, 1.0);
    s.density.assign(n, 1.0);
    s.current.assign(n, v);
    s.velocity.assign(n, v);
    s.mask.assign(n, NodeMask::valid);
    return s;
}

}  // namespace

TEST_CASE("seeding by quantiles") {
    const auto rest = packet(0.0);
    const auto rho0 = density_u(evolve_uncoupled(rest, 0.0));

    // |phi|^2 of the sigma = 1 Gaussian is normal with standard deviation 1. The
    // piecewise-linear CDF carries an O(dx^2) quantile error.
    for (std::size_t n : {1024u, 4096u}) {
        const auto fine = packet(0.0, n);
        const double dx = fine.grids().dx();
        const auto two = sample_initial_positions(density_u(evolve_uncoupled(fine, 0.0)), 2);
        REQUIRE(two.size() == 2);
        CHECK(std::abs(two[0] - kgbohm::testing::normal_quantile(0.25)) < 0.25 * dx * dx);
        CHECK(std::abs(two[1] - kgbohm::testing::normal_quantile(0.75)) < 0.25 * dx * dx);
        CHECK(two[0] == doctest::Approx(-two[1]).epsilon(1e-12));
    }

    const auto one = sample_initial_positions(rho0, 1);
    CHECK(std::abs(one[0]) < 1e-12);

    const auto moving = packet(3.0);
    const auto rho3 = density_u(evolve_uncoupled(moving, 1.5));
    const DensityCdf cdf(rho3);
    const auto eight = sample_initial_positions(rho3, 8);
    for (std::size_t i = 1; i < eight.size(); ++i) {
        CHECK(eight[i] > eight[i - 1]);
        CHECK((cdf.at(eight[i]) - cdf.at(eight[i - 1])) / cdf.total() == doctest::Approx(0.125).epsilon(1e-12));
    }

    CHECK_THROWS_AS(sample_initial_positions(rho0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_initial_positions(rho0, 1025), std::invalid_argument);
    CHECK_NOTHROW(sample_initial_positions(rho0, 1024));
}

TEST_CASE("velocity provider: interpolation, caching, guards") {
    const auto rest = packet(0.0);
    auto provider = make_uncoupled_provider(rest);
    const double t = 1.0;
    const auto& s = provider.slice(t);
    const auto& x = rest.grids().x();
    const std::size_t j = rest.grids().zero_mode() + 7;
    CHECK(provider.velocity(x[j], t) == s.velocity[j]);
    const double mid = 0.5 * (x[j] + x[j + 1]);
    CHECK(provider.cached_velocity(mid, t) == doctest::Approx(0.5 * (s.velocity[j] + s.velocity[j + 1])));
    CHECK(std::abs(provider.cached_velocity(mid, t) - current_u_direct(rest, mid, t).value /
                                                         std::norm(synthesize(rest.g, mid, t))) < 1e-4);

    CHECK_THROWS_AS(provider.cached_velocity(0.0, 1.25), std::logic_error);
    CHECK_THROWS_AS(provider.cached_velocity(x[2], t), GuardError);
    CHECK_THROWS_AS(provider.cached_velocity(x.back(), t), GuardError);
    // Far tail: density below the trajectory mask.
    CHECK_THROWS_AS(provider.cached_velocity(40.0, t), GuardError);

    const std::vector<double> times{0.5, 1.5, 2.0};
    provider.prepare(times);
    CHECK(provider.cached_slices() == 4);
    provider.evict_before(1.5);
    CHECK(provider.cached_slices() == 2);
}

TEST_CASE("trajectory guard: seed in a masked region") {
    const auto rest = packet(0.0);
    auto provider = make_uncoupled_provider(rest);
    CHECK_THROWS_AS(integrate_trajectory(provider, 45.0, 1.0, {}), GuardError);
}

TEST_CASE("narrow momentum spread gives a straight line at the group velocity") {
    SimulationParams prm;
    prm.p0 = 1.0;
    prm.sigma = 20.0;
    prm.n_modes = 4096;
    prm.x_min = -400.0;
    prm.x_max = 800.0;
    const UncoupledState wide{gaussian_spectral(prm, make_conjugate_grids(prm))};
    auto provider = make_uncoupled_provider(wide);
    IntegratorConfig cfg;
    cfg.dt = 0.05;
    const auto tr = integrate_trajectory(provider, 0.0, 4.0, cfg);
    const auto& a = tr.samples.front();
    const auto& b = tr.samples.back();
    CHECK(b.t == doctest::Approx(4.0));
    CHECK(std::abs((b.x - a.x) / (b.t - a.t) - 1.0 / std::sqrt(2.0)) < 1e-3);
    for (const auto& s : tr.samples) CHECK(std::abs(s.v - 1.0 / std::sqrt(2.0)) < 1e-3);
}

TEST_CASE("central streamline of the packet at rest stays put") {
    const auto rest = packet(0.0);
    auto provider = make_uncoupled_provider(rest);
    const auto tr = integrate_trajectory(provider, 0.0, 10.0, {});
    for (const auto& s : tr.samples) {
        CHECK(std::abs(s.x) < 1e-8);
        CHECK(std::isfinite(s.v));
    }
}

TEST_CASE("packet at rest: 16 trajectories") {
    const auto trs = rest_ensemble(16, 10.0, 1e-2);
    REQUIRE(trs.size() == 16);
    const auto report = check_non_crossing(trs);
    CHECK(report.ordered);

    double vmax = 0.0;
    for (const auto& tr : trs) {
        REQUIRE(tr.samples.size() == 1001);
        for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);
        for (const auto& s : tr.samples) vmax = std::max(vmax, std::abs(s.v));
    }
    CHECK(vmax < 1.0);

    // Symmetric fan-out: the packet spreads, outer seeds move out.
    for (std::size_t i = 0; i < 16; ++i) {
        const auto& tr = trs[i];
        const auto& mirror = trs[15 - i];
        CHECK(std::abs(tr.samples.back().x) > std::abs(tr.samples.front().x));
        for (std::size_t k = 0; k < tr.samples.size(); ++k) CHECK(std::abs(tr.samples[k].x + mirror.samples[k].x) < 1e-8);
    }
}

TEST_CASE("RK4 endpoints converge when the step is halved") {
    const auto coarse = rest_ensemble(16, 10.0, 1e-2);
    const auto fine = rest_ensemble(16, 10.0, 5e-3);
    double shift = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i)
        shift = std::max(shift, std::abs(coarse[i].samples.back().x - fine[i].samples.back().x));
    CHECK(shift < 1e-6);
}

TEST_CASE("quantile-seeded trajectories transport probability") {
    const auto rest = packet(0.0);
    for (double p0 : {0.0, 3.0}) {
        const auto s = packet(p0);
        auto provider = make_uncoupled_provider(s);
        const auto seeds = sample_initial_positions(density_u(evolve_uncoupled(s, 0.0)), 64);
        const auto trs = integrate_ensemble(provider, seeds, 2.0, {});
        const double median = DensityCdf(density_u(evolve_uncoupled(s, 2.0))).quantile(0.5);
        std::size_t below = 0;
        for (const auto& tr : trs) below += tr.samples.back().x < median ? 1 : 0;
        CHECK(std::abs(static_cast<double>(below) / 64.0 - 0.5) <= 1.0 / 64.0);
    }
}

TEST_CASE("ensemble and single-trajectory integration agree") {
    const auto s = packet(3.0);
    auto a = make_uncoupled_provider(s);
    auto b = make_uncoupled_provider(s);
    const std::vector<double> seeds{-0.5, 0.0, 0.7};
    IntegratorConfig cfg;
    cfg.output_stride = 10;
    const auto ens = integrate_ensemble(a, seeds, 1.0, cfg);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto one = integrate_trajectory(b, seeds[i], 1.0, cfg);
        REQUIRE(one.samples.size() == ens[i].samples.size());
        CHECK(one.samples.size() == 11);
        for (std::size_t k = 0; k < one.samples.size(); ++k) CHECK(one.samples[k].x == ens[i].samples[k].x);
    }
    SUBCASE("keep-all caching yields the same paths") {
        auto c = make_uncoupled_provider(s);
        cfg.refresh = SliceRefresh::keep_all;
        const auto kept = integrate_ensemble(c, seeds, 1.0, cfg);
        for (std::size_t i = 0; i < seeds.size(); ++i) CHECK(kept[i].samples.back().x == ens[i].samples.back().x);
        CHECK(c.cached_slices() > 100);
    }
}

TEST_CASE("crossing detector") {
    auto trs = rest_ensemble(4, 1.0, 1e-2);
    CHECK(check_non_crossing(trs).ordered);

    std::vector<Trajectory> twins{trs[1], trs[1]};
    CHECK(check_non_crossing(twins).ordered);

    std::swap(trs[1].samples[40].x, trs[2].samples[40].x);
    const auto bad = check_non_crossing(trs);
    CHECK_FALSE(bad.ordered);
    CHECK(bad.sample_index == 40);
    CHECK(bad.lower == 1);
    CHECK(bad.upper == 2);
    CHECK(!bad.describe().empty());

    trs[0].samples.pop_back();
    CHECK_THROWS_AS(check_non_crossing(trs), std::invalid_argument);
}

TEST_CASE("superluminal scan") {
    const std::vector<FieldSlice> slow{constant_velocity(0.5)};
    const auto none = superluminal_scan(slow, 1.0);
    CHECK(none.cells.empty());
    CHECK(none.max_speed_ratio == doctest::Approx(0.5));
    CHECK(none.scanned_nodes == 64);

    std::vector<FieldSlice> fast{constant_velocity(0.5), constant_velocity(-1.0)};
    fast[0].velocity[3] = 2.0;
    fast[0].mask[5] = NodeMask::masked_low_density;
    fast[0].velocity[5] = 40.0;
    const auto some = superluminal_scan(fast, 1.0);
    CHECK(some.cells.size() == 65);
    CHECK(some.max_speed_ratio == doctest::Approx(2.0));
    CHECK(some.scanned_nodes == 127);
    CHECK(superluminal_scan(fast, 4.0).cells.empty());

    fast[0].density[3] = 1e-4;
    CHECK(superluminal_scan(fast, 1.0, 1e-3).max_speed_ratio == doctest::Approx(1.0));
}
