#include <benchmark/benchmark.h>

#include "hawkes/asymptotics.hpp"

using namespace hawkes;

static void BM_SpectralGram(benchmark::State& state) {
    const auto spec = exponential_truth(0.5, 1.0, 1.0);
    const KernelBasis basis(BasisFamily::Laguerre, 1.0, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectral_gram(spec, basis));
}
BENCHMARK(BM_SpectralGram)->Arg(5)->Arg(15)->Unit(benchmark::kMicrosecond);

static void BM_ConditioningStudy(benchmark::State& state) {
    std::vector<int> orders;
    for (int P = 1; P <= 15; ++P) orders.push_back(P);
    for (auto _ : state) benchmark::DoNotOptimize(conditioning_study(0.5, 1.0, 1.0, orders));
}
BENCHMARK(BM_ConditioningStudy)->Unit(benchmark::kMillisecond);
