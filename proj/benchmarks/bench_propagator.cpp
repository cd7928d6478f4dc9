#include <benchmark/benchmark.h>

#include "lds/estimator.hpp"
#include "lds/propagator.hpp"
#include "lds/thermal.hpp"

using namespace lds;

static void BM_PropagatorSetupEigen(benchmark::State& state) {
    const FloquetSpec spec{0.1, 0.31, static_cast<int>(state.range(0)), 0};
    for (auto _ : state) {
        FloquetPropagator prop(spec, Method::eigen);
        benchmark::DoNotOptimize(prop.substeps());
    }
}
BENCHMARK(BM_PropagatorSetupEigen)->Arg(511)->Arg(2047)->Unit(benchmark::kMillisecond);

static void BM_PulseEigen(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FloquetSpec spec{0.1, 0.31, n, 0};
    FloquetPropagator prop(spec, Method::eigen);
    auto s = QuantumState::plane_wave(0, n, 0.31);
    for (auto _ : state) {
        prop.apply(s);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_PulseEigen)->Arg(511)->Arg(2047)->Unit(benchmark::kMicrosecond);

static void BM_PulseSplitStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FloquetSpec spec{0.1, 0.0, n, 256};
    FloquetPropagator prop(spec, Method::splitstep);
    auto s = QuantumState::plane_wave(0, n, 0.0);
    for (auto _ : state) {
        prop.apply(s);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
}
BENCHMARK(BM_PulseSplitStep)->Arg(511)->Arg(2047)->Unit(benchmark::kMillisecond);

static void BM_Evolve40(benchmark::State& state) {
    const FloquetSpec spec{0.1, 0.0, static_cast<int>(state.range(0)), 0};
    for (auto _ : state) {
        auto series = evolve(0, spec, 40, Method::eigen);
        benchmark::DoNotOptimize(series.populations.data());
    }
}
BENCHMARK(BM_Evolve40)->Arg(511)->Arg(2047)->Unit(benchmark::kMillisecond);

static void BM_ThermalAverage(benchmark::State& state) {
    const std::vector<double> widths{0.0125};
    for (auto _ : state) {
        auto avg = thermal_average(0.1, {0.0125, static_cast<int>(state.range(0))}, 40,
                                   127, Method::eigen);
        benchmark::DoNotOptimize(avg.populations.data());
    }
}
BENCHMARK(BM_ThermalAverage)->Arg(401)->Arg(1001)->Unit(benchmark::kMillisecond);

static void BM_FitAnalytic(benchmark::State& state) {
    ObservedSeries data;
    const ModelSpec model{ModelKind::analytic};
    for (int n = 0; n <= 40; ++n) data.pulses.push_back(n);
    data.p0 = model.predict(data.pulses, 0.07);
    for (auto _ : state) {
        auto fit = fit_lattice_depth(data, model, 0.0, 0.5);
        benchmark::DoNotOptimize(fit.v_eff_hat);
    }
}
BENCHMARK(BM_FitAnalytic)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
