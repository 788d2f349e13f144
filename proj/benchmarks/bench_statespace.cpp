#include <benchmark/benchmark.h>

#include "hawkes/statespace.hpp"

using namespace hawkes;

static void BM_ExpmApply(benchmark::State& state) {
    const auto m = build_state_space(KernelBasis(BasisFamily::Laguerre, 1.0, state.range(0)));
    const Vector x = m.B();
    double dt = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm_apply(m, dt, x));
        dt = dt < 5.0 ? dt * 1.01 : 0.37;
    }
}
BENCHMARK(BM_ExpmApply)->Arg(3)->Arg(8)->Arg(20);

static void BM_SolveLyapunov(benchmark::State& state) {
    const int P = state.range(0);
    const auto m = build_state_space(KernelBasis(BasisFamily::Laguerre, 1.0, P));
    const Matrix Q = m.B() * m.B().transpose() + Matrix::Identity(P, P);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(m, Q));
}
BENCHMARK(BM_SolveLyapunov)->Arg(3)->Arg(8)->Arg(20);
