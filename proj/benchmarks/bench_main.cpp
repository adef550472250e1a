#include <benchmark/benchmark.h>

#include <vector>

#include "illiqcorr/bootstrap.hpp"
#include "illiqcorr/kernel.hpp"
#include "illiqcorr/powercorr.hpp"
#include "illiqcorr/series.hpp"
#include "illiqcorr/simulate.hpp"

using namespace illiq;

namespace {

sim::SimulatedPanel panel_of(std::size_t n) {
    sim::DgpConfig config = sim::DgpConfig::from_code("a2");
    config.n = n;
    config.seed = 42;
    return sim::generate(config, 1.0);
}

void bm_generate(benchmark::State& state) {
    sim::DgpConfig config = sim::DgpConfig::from_code("c2");
    config.n = static_cast<std::size_t>(state.range(0));
    config.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(sim::generate(config, 1.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_classical_autocorr(benchmark::State& state) {
    const auto panel = panel_of(static_cast<std::size_t>(state.range(0)));
    PowerSpec spec;
    spec.max_lag = 5;
    const PowerSeries power = power_transform(panel.observed, spec);
    for (auto _ : state) benchmark::DoNotOptimize(classical_autocorr(power, 5));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_smooth(benchmark::State& state) {
    const auto panel = panel_of(static_cast<std::size_t>(state.range(0)));
    KernelConfig config;
    std::vector<double> y(panel.observed.indicators.begin(), panel.observed.indicators.end());
    for (auto _ : state) benchmark::DoNotOptimize(smooth(y, 0.1, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_loocv(benchmark::State& state) {
    const auto panel = panel_of(static_cast<std::size_t>(state.range(0)));
    KernelConfig config;
    std::vector<double> y(panel.observed.indicators.begin(), panel.observed.indicators.end());
    for (auto _ : state) benchmark::DoNotOptimize(loocv_bandwidth(y, config));
}

void bm_bootstrap(benchmark::State& state) {
    const auto panel = panel_of(400);
    PowerSpec spec;
    spec.max_lag = 5;
    const AutocorrSet ac = classical_autocorr(power_transform(panel.observed, spec), 5);
    BootstrapConfig config;
    config.B = static_cast<std::size_t>(state.range(0));
    config.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(run_test(ac, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_generate)->Arg(400)->Arg(2000)->Arg(10000);
BENCHMARK(bm_classical_autocorr)->Arg(400)->Arg(2000)->Arg(10000);
BENCHMARK(bm_smooth)->Arg(400)->Arg(2000);
BENCHMARK(bm_loocv)->Arg(200)->Arg(400)->Arg(800);
BENCHMARK(bm_bootstrap)->Arg(99)->Arg(499)->Arg(1999);

BENCHMARK_MAIN();
