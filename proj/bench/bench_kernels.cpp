// Serial reference vs OpenMP kernels, and the FFT path they cross-check.

#include <benchmark/benchmark.h>

#include "kgbohm/bohm.hpp"
#include "kgbohm/kernels.hpp"
#include "kgbohm/uncoupled.hpp"

using namespace kgbohm;

namespace {

UncoupledState packet(std::size_t n) {
    SimulationParams prm;
    prm.p0 = 3.0;
    prm.n_modes = n;
    prm.x_min = -40.0;
    prm.x_max = 88.0;
    return {gaussian_spectral(prm, make_conjugate_grids(prm))};
}

std::vector<double> points(std::size_t count) {
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(count);
    return xs;
}

template <auto Kernel>
void current(benchmark::State& st) {
    const auto s = packet(static_cast<std::size_t>(st.range(0)));
    const auto xs = points(static_cast<std::size_t>(st.range(1)));
    std::vector<kernels::CurrentSample> out(xs.size());
    for (auto _ : st) {
        Kernel(s.g, 1.0, xs, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.counters["threads"] = kernels::max_threads();
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0) * st.range(1));
}

template <auto Kernel>
void synthesize(benchmark::State& st) {
    const auto s = packet(static_cast<std::size_t>(st.range(0)));
    const auto xs = points(static_cast<std::size_t>(st.range(1)));
    std::vector<cplx> out(xs.size());
    for (auto _ : st) {
        Kernel(s.g, 1.0, TimeDerivative::first, xs, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(1));
}

void fast_current(benchmark::State& st) {
    const auto s = packet(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(current_u_fast(s, 1.0));
}

void ensemble(benchmark::State& st) {
    SimulationParams prm;
    prm.n_modes = 1024;
    prm.x_min = -64.0;
    prm.x_max = 64.0;
    const UncoupledState s{gaussian_spectral(prm, make_conjugate_grids(prm))};
    const auto seeds = sample_initial_positions(density_u(evolve_uncoupled(s, 0.0)), static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        auto provider = make_uncoupled_provider(s);
        benchmark::DoNotOptimize(integrate_ensemble(provider, seeds, 2.0, {}));
    }
}

}  // namespace

BENCHMARK(current<kernels::serial::current_points>)->Name("current/serial")->Args({256, 16})->Args({1024, 16});
BENCHMARK(current<kernels::omp::current_points>)->Name("current/omp")->Args({256, 16})->Args({1024, 16});
BENCHMARK(synthesize<kernels::serial::synthesize_points>)->Name("synthesize/serial")->Args({1024, 1024});
BENCHMARK(synthesize<kernels::omp::synthesize_points>)->Name("synthesize/omp")->Args({1024, 1024});
BENCHMARK(fast_current)->Arg(1024)->Arg(4096);
BENCHMARK(ensemble)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
