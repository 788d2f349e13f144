#include <benchmark/benchmark.h>

#include "hawkes/estimate.hpp"
#include "hawkes/simulate.hpp"

using namespace hawkes;

static void BM_SimulateExponential(benchmark::State& state) {
    const double T = static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_exponential(0.5, 0.5, 1.0, T, seed++));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(T));
}
BENCHMARK(BM_SimulateExponential)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_SimulateLaguerre(benchmark::State& state) {
    const KernelBasis basis(BasisFamily::Laguerre, 1.0, 3);
    const Vector alpha = (Vector(3) << 0.3, -0.1, 0.05).finished();
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(simulate_laguerre(1.0, alpha, basis, 1e4, seed++));
}
BENCHMARK(BM_SimulateLaguerre)->Unit(benchmark::kMillisecond);

static void BM_EstimateFromStream(benchmark::State& state) {
    const auto stream = simulate_exponential(0.5, 0.5, 1.0, 1e5, 1);
    const KernelBasis basis(BasisFamily::Laguerre, 1.0, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_from_stream(stream, basis));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(stream.size()));
}
BENCHMARK(BM_EstimateFromStream)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);
