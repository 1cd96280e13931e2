#include "placy/placy.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace placy;

namespace {

std::vector<double> noise_series(std::size_t length, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> series(length);
    for (double& v : series) v = rng.normal();
    return series;
}

void BM_DftAmplitudes(benchmark::State& state) {
    const auto window = noise_series(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dft_amplitudes(window));
    }
}
BENCHMARK(BM_DftAmplitudes)->Arg(50)->Arg(100)->Arg(200);

void BM_FitPowerLaw(benchmark::State& state) {
    const Spectrum spectrum = dft_amplitudes(noise_series(50, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_power_law(spectrum));
    }
}
BENCHMARK(BM_FitPowerLaw);

void BM_ExtractFeatures(benchmark::State& state) {
    const auto series = noise_series(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_features(series, WindowPlan{50, 1}));
    }
}
BENCHMARK(BM_ExtractFeatures)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_WaldGrangerTest(benchmark::State& state) {
    Rng rng(4);
    const Eigen::Index n = state.range(0);
    Eigen::MatrixXd data(n, 3);
    for (Eigen::Index c = 0; c < 3; ++c)
        for (Eigen::Index t = 0; t < n; ++t) data(t, c) = rng.normal();
    VarSpec spec;
    spec.max_lag = 10;
    spec.caused = 0;
    spec.causing = {1, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(wald_granger_test(data, spec));
    }
}
BENCHMARK(BM_WaldGrangerTest)->Arg(500)->Arg(4951)->Unit(benchmark::kMillisecond);

void BM_GenerateScenario(benchmark::State& state) {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::OU_MULT;
    spec.n_vars = 5;
    spec.length = static_cast<std::size_t>(state.range(0));
    spec.ou.sigma_b = 0.5;
    spec.ou.sigma_ga = 1.0;
    spec.ou.sigma_gm = 1.0;
    spec.seed = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_scenario(spec));
    }
}
BENCHMARK(BM_GenerateScenario)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Discover(benchmark::State& state) {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::OU_MULT;
    spec.n_vars = static_cast<std::size_t>(state.range(0));
    spec.length = 5000;
    spec.ou.sigma_b = 0.5;
    spec.ou.sigma_ga = 1.0;
    spec.ou.sigma_gm = 1.0;
    spec.seed = 6;
    const Scenario scenario = make_scenario(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(discover(scenario.data, DiscoveryConfig{}, 2));
    }
}
BENCHMARK(BM_Discover)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GrangerBaseline(benchmark::State& state) {
    ScenarioSpec spec;
    spec.kind = ScenarioKind::OU_MULT;
    spec.n_vars = static_cast<std::size_t>(state.range(0));
    spec.length = 5000;
    spec.ou.sigma_b = 0.5;
    spec.ou.sigma_ga = 1.0;
    spec.ou.sigma_gm = 1.0;
    spec.seed = 7;
    const Scenario scenario = make_scenario(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(granger_baseline(scenario.data, 10, 0.05, 2));
    }
}
BENCHMARK(BM_GrangerBaseline)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
