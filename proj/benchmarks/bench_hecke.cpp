#include <benchmark/benchmark.h>

#include "tplab/hecke.hpp"

static void BM_PowerTable(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const auto n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tplab::hecke::hecke_power_table(d, n));
}
BENCHMARK(BM_PowerTable)->Args({1, 16})->Args({2, 16})->Args({4, 32});

static void BM_VarianceExpansion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tplab::hecke::variance_expansion(state.range(0) != 0));
}
BENCHMARK(BM_VarianceExpansion)->Arg(0)->Arg(1);

static void BM_ChebyshevBasis(benchmark::State& state) {
  const auto u = tplab::hecke::chebyshev_u(static_cast<unsigned>(state.range(0)));
  const auto p = u * u;
  for (auto _ : state) benchmark::DoNotOptimize(tplab::hecke::to_chebyshev_basis(p));
}
BENCHMARK(BM_ChebyshevBasis)->Arg(8)->Arg(32);
