#include <benchmark/benchmark.h>

#include <cmath>

#include "tplab/pipeline.hpp"
#include "tplab/primes.hpp"

using namespace tplab::pipeline;

static void BM_RangeTable(benchmark::State& state) {
  const auto cfg = BoundConfig::from_q(std::pow(10.0, static_cast<double>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(range_table_bound(cfg));
}
BENCHMARK(BM_RangeTable)->Arg(12)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_ChandeeRhs(benchmark::State& state) {
  const auto x = static_cast<double>(state.range(0));
  std::vector<PrimeCoefficients> data;
  for (auto p : tplab::primes::primes_up_to(static_cast<std::uint64_t>(x)))
    data.push_back(coefficients_from_lambda(p, 1.2, -0.4, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(chandee_rhs(data, x, {}, 10.0));
}
BENCHMARK(BM_ChandeeRhs)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_Stirling(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stirling_factorial_check(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Stirling)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Primes(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tplab::primes::primes_up_to(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Primes)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);
