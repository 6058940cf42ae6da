#include <benchmark/benchmark.h>

#include "mxc/homopoly.hpp"
#include "mxc/rational.hpp"

using namespace mxc;

namespace {

HomoPoly dense_poly(int degree, std::uint64_t seed) {
  RationalSampler sampler(seed);
  HomoPoly p(degree);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      p.add_term(MultiIndex(a, b, degree - a - b), sampler.next_gaussian());
  return p;
}

}  // namespace

static void BM_PolyMultiply(benchmark::State& state) {
  int deg = static_cast<int>(state.range(0));
  HomoPoly p = dense_poly(deg, 1), q = dense_poly(deg, 2);
  for (auto _ : state) benchmark::DoNotOptimize(p * q);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyMultiply)->DenseRange(2, 8, 2)->Complexity();

static void BM_DivergenceIdentityRoute(benchmark::State& state) {
  int deg = static_cast<int>(state.range(0));
  RationalSampler sampler(7);
  VecHomoPoly p(dense_poly(deg, 3), dense_poly(deg, 4), dense_poly(deg, 5));
  for (auto _ : state) benchmark::DoNotOptimize(divergence_free_by_coeffs(p));
}
BENCHMARK(BM_DivergenceIdentityRoute)->DenseRange(2, 8, 2);
