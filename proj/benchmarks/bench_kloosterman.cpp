#include <benchmark/benchmark.h>

#include "tplab/kloosterman.hpp"

using tplab::kloosterman::KloostermanQuery;

static void BM_Direct(benchmark::State& state) {
  const KloostermanQuery q{3, 5, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(tplab::kloosterman::kloosterman_direct(q));
}
BENCHMARK(BM_Direct)->Arg(997)->Arg(9240)->Arg(99991);

static void BM_Factored(benchmark::State& state) {
  const KloostermanQuery q{3, 5, static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(tplab::kloosterman::kloosterman_factored(q));
}
BENCHMARK(BM_Factored)->Arg(997)->Arg(9240)->Arg(99991);

static void BM_FactoredSweep(benchmark::State& state) {
  const auto c_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    double s = 0.0;
    for (std::uint64_t c = 1; c <= c_max; ++c) s += tplab::kloosterman::kloosterman_factored({1, 2, c});
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_FactoredSweep)->Arg(2000)->Unit(benchmark::kMillisecond);
