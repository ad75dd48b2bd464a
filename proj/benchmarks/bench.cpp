#include <benchmark/benchmark.h>

#include "nilcycle/focal/lienard.hpp"
#include "nilcycle/poincare/polar_field.hpp"
#include "nilcycle/poincare/return_map.hpp"
#include "nilcycle/system/planar_system.hpp"

using namespace nilcycle;

namespace {

TruncatedSeries dense(int order) {
  TruncatedSeries s(order);
  for (int k = 1; k <= order; ++k) s.set(k, Rational(k % 2 == 0 ? 1 : -1, k + 1));
  return s;
}

void BM_Multiply(benchmark::State& state) {
  const auto a = dense(static_cast<int>(state.range(0)));
  const auto b = dense(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(10)->Arg(20)->Arg(40);

void BM_Reversion(benchmark::State& state) {
  auto f = dense(static_cast<int>(state.range(0)));
  f.set(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reversion(f));
}
BENCHMARK(BM_Reversion)->Arg(10)->Arg(20)->Arg(40);

void BM_FocalCoefficients(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  TruncatedSeries g(order);
  g.set(3, 1);
  g.set(4, Rational(1, 3));
  g.set(5, 1);
  const auto f = dense(order);
  for (auto _ : state) benchmark::DoNotOptimize(focal_coefficients(g, f));
}
BENCHMARK(BM_FocalCoefficients)->Arg(12)->Arg(24);

void BM_ReturnMap(benchmark::State& state) {
  TruncatedSeries g(20), f(20);
  g.set(3, 1);
  f.set(2, 1);
  const PolarField field(make_lienard(g, f, 20));
  const double x0 = static_cast<double>(state.range(0)) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(return_map(field, x0));
}
BENCHMARK(BM_ReturnMap)->Arg(10)->Arg(100);

void BM_SampleAndFit(benchmark::State& state) {
  const auto sys = parse_system("kind general\nY 1 1 -1\nY 3 0 -1\nY 2 1 -1/10\n");
  const PolarField field(sys);
  const auto grid = geometric_grid(1e-3, 0.1, 40);
  for (auto _ : state) benchmark::DoNotOptimize(fit_focal(sample_return_map(field, grid, Side::kPositive)));
}
BENCHMARK(BM_SampleAndFit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
