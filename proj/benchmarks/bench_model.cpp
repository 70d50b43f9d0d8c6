#include <benchmark/benchmark.h>

#include "tplab/random_model.hpp"

using namespace tplab::model;

static void BM_SatoTateDraw(benchmark::State& state) {
  tplab::rng::CounterStream s(7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_sato_tate(s));
}
BENCHMARK(BM_SatoTateDraw);

static void BM_Simulate(benchmark::State& state) {
  ModelConfig cfg;
  cfg.x = static_cast<std::uint64_t>(state.range(0));
  cfg.samples = 2000;
  cfg.threads = 1;
  const auto setup = build_setup(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(setup, cfg));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.samples * setup.primes.size()));
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ExactMoments(benchmark::State& state) {
  const std::vector<double> w(static_cast<std::size_t>(state.range(0)), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(exact_even_moments(w, 6));
}
BENCHMARK(BM_ExactMoments)->Arg(1229)->Arg(9592);
