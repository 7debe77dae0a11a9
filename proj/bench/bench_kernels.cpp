// Serial reference against the OpenMP path for each data-parallel kernel.
// Run with --benchmark_filter=<kernel> to compare one pair.

#include "sqz/config.hpp"
#include "sqz/dsp.hpp"
#include "sqz/model_chain.hpp"
#include "sqz/pulsed.hpp"

#include <benchmark/benchmark.h>

using namespace sqz;

namespace {

Execution exec_of(const benchmark::State& state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_synthesize(benchmark::State& state) {
    const auto s = detected_spectrum(RunConfig{}, Mode::minus);
    const auto n = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(s, 25e6, n, 1, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * state.range(1));
    label(state);
}
BENCHMARK(BM_synthesize)->ArgsProduct({{0, 1}, {1 << 18, 1 << 22}})->Unit(benchmark::kMillisecond);

void BM_welch(benchmark::State& state) {
    const auto ts = synthesize(NoiseSpectrum::constant(1.0), 25e6, static_cast<std::size_t>(state.range(1)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(welch_psd(ts, 100e3, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * state.range(1));
    label(state);
}
BENCHMARK(BM_welch)->ArgsProduct({{0, 1}, {1 << 18, 1 << 22}})->Unit(benchmark::kMillisecond);

void BM_sweep(benchmark::State& state) {
    const auto s = observed_spectrum(RunConfig{}, Mode::plus);
    const SweepConfig cfg{300e3, 10e6, static_cast<std::size_t>(state.range(1)), 100e3, 300.0, 3};
    for (auto _ : state) benchmark::DoNotOptimize(emulate_sweep(s, cfg, exec_of(state)));
    label(state);
}
BENCHMARK(BM_sweep)->ArgsProduct({{0, 1}, {401, 4001}})->Unit(benchmark::kMillisecond);

void BM_pulsed(benchmark::State& state) {
    const RunConfig c;
    const auto s = clamp_below_knee(detected_spectrum(c, Mode::minus), c.noise.lf_knee);
    const QuadratureOptions opt{static_cast<std::size_t>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(pulsed_analysis(s, {1e-6}, opt, exec_of(state)));
    label(state);
}
BENCHMARK(BM_pulsed)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
