#include <benchmark/benchmark.h>

#include "mxc/orthant_laplace.hpp"
#include "mxc/harmonics.hpp"

using namespace mxc;

static void BM_LaplacePoly(benchmark::State& state) {
  VecHomoPoly p = vsh_T(static_cast<int>(state.range(0)), 1).body;
  for (auto _ : state) benchmark::DoNotOptimize(laplace_poly(p));
}
BENCHMARK(BM_LaplacePoly)->DenseRange(2, 8, 2);

static void BM_DividesSigma(benchmark::State& state) {
  // exact linear solve on the coefficient system
  VecHomoPoly p = vsh_T(static_cast<int>(state.range(0)), 1).body;
  RhoPoly q = laplace_poly(p);
  for (auto _ : state) benchmark::DoNotOptimize(divides_sigma(q));
}
BENCHMARK(BM_DividesSigma)->DenseRange(2, 8, 2);
