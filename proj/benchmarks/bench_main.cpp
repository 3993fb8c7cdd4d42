#include <benchmark/benchmark.h>

#include "gtank/asymptotics.hpp"
#include "gtank/binomial.hpp"
#include "gtank/lattice.hpp"
#include "gtank/oracle.hpp"
#include "gtank/simulator.hpp"

namespace {

void BM_Binomial(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(gtank::binomial(n, n / 3));
}
BENCHMARK(BM_Binomial)->Arg(100)->Arg(10'000)->Arg(1'000'000);

void BM_OracleScan(benchmark::State& state) {
  const long N = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(gtank::oracle_scan(N, N / 2));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(gtank::subset_count(N, N / 2)));
}
BENCHMARK(BM_OracleScan)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CountBall(benchmark::State& state) {
  const std::int64_t r = state.range(0);
  const int dim = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gtank::count_ball(r * r, dim));
}
BENCHMARK(BM_CountBall)->Args({2000, 2})->Args({100, 3})->Args({30, 4})->Unit(benchmark::kMicrosecond);

void BM_RunTrials(benchmark::State& state) {
  gtank::SimConfig config;
  config.geometry = {gtank::Mode::discrete, gtank::Shape::interval, 1, 1e6};
  config.k = state.range(0);
  config.trials = 10'000;
  config.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(gtank::run_trials(config));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(config.trials));
}
BENCHMARK(BM_RunTrials)->Arg(10)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EulerMaclaurin(benchmark::State& state) {
  gtank::PowerSumSpec spec;
  spec.w = 12;
  spec.c = 66;
  spec.y = 11;
  spec.a = 1;
  spec.b = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(gtank::euler_maclaurin(spec));
}
BENCHMARK(BM_EulerMaclaurin)->Arg(1000)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged libbenchmark_main.a carries LTO bytecode from another
// compiler version, so main comes from here.
BENCHMARK_MAIN();
