#include <benchmark/benchmark.h>

#include "tplab/transforms.hpp"

using namespace tplab::transforms;

static void BM_H0(benchmark::State& state) {
  const TestFn f(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(h0(f));
}
BENCHMARK(BM_H0)->Arg(3)->Arg(10);

static void BM_HPlus(benchmark::State& state) {
  const TestFn f(static_cast<double>(state.range(0)));
  const double x = static_cast<double>(state.range(1)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(h_plus(f, x));
}
BENCHMARK(BM_HPlus)->Args({3, 1})->Args({3, 100})->Args({10, 190})->Unit(benchmark::kMicrosecond);

static void BM_GeometricSide(benchmark::State& state) {
  GeometricOptions o;
  o.c_max = o.c_cap = static_cast<std::uint64_t>(state.range(0));
  o.threads = 1;
  const TestFn f(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_side(101, 1, 2, f, o));
}
BENCHMARK(BM_GeometricSide)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
