#include <benchmark/benchmark.h>

#include <numbers>

#include "mxc/cgo.hpp"
#include "mxc/grid.hpp"

using namespace mxc;

static void BM_FaddeevSolve(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  const double L = 2.0 * std::numbers::pi;
  SpectralBox box(n, L);
  double t = 16.0 / std::sqrt(2.0), s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
  cvec3 zeta{std::complex<double>(t / s3, t / s2), std::complex<double>(t / s3, -t / s2),
             std::complex<double>(t / s3, 0.0)};
  double d = std::numbers::pi / L / s3;
  FaddeevSolver solver(box, zeta, {d, d, d});
  Field f = box.random_smooth_field(5, n / 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(f));
}
BENCHMARK(BM_FaddeevSolve)->Arg(32)->Arg(48)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ApplyQ(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  const double L = 2.0 * std::numbers::pi;
  SpectralBox box(n, L);
  MediumProfile prof = MediumProfile::random_smooth(L, 11, 0.3);
  CgoMatrices m = CgoMatrices::build(box, prof, 1.0);
  EightField f = EightField::zeros(box);
  f.h = box.random_smooth_field(3, n / 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_Q(m, f));
}
BENCHMARK(BM_ApplyQ)->Arg(32)->Arg(48)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
