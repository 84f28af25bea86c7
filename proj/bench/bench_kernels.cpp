// Serial reference kernels against their OpenMP counterparts on the
// workloads the CLI actually runs.

#include <benchmark/benchmark.h>

#include <cmath>

#include "bitcred/encode.hpp"
#include "bitcred/kernels.hpp"
#include "bitcred/mc.hpp"

namespace {

using namespace bitcred;

constexpr int kTrials = 4000;

void BM_BinomialWeights_Serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& table = shared_log_factorials(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::binomial_weights(table, n, 0.3));
}

void BM_BinomialWeights_Omp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto& table = shared_log_factorials(n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::binomial_weights(table, n, 0.3));
}

double arcsine_point(double p) { return prob_bits_correct(EncodingKind::arcsine, kTrials, p, BitBudget(6)); }

void BM_CurveSweep_Serial(benchmark::State& state) {
  const auto grid = default_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::map_grid(grid, arcsine_point));
}

void BM_CurveSweep_Omp(benchmark::State& state) {
  const auto grid = default_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::map_grid(grid, arcsine_point));
}

template <bool Parallel>
void BM_TrinomialRows(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TrinomialTerm term(shared_log_factorials(n), n, 0.25, 0.25);
  const CountWindow rows = binomial_window(n, 0.25, 1e-15);
  const auto f = [n](int a, int b) { return std::sqrt(static_cast<double>(a) * b) / n; };
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::omp::trinomial_rows(term, rows, rows, f));
    else
      benchmark::DoNotOptimize(kernels::serial::trinomial_rows(term, rows, rows, f));
  }
}

template <bool Parallel>
void BM_Replicate(benchmark::State& state) {
  const SamplerConfig cfg{42, static_cast<std::size_t>(state.range(0))};
  const auto dist = OutcomeDistribution::binary(0.5);
  const auto draw = [&](std::size_t r) { return static_cast<double>(sample_counts(kTrials, dist, cfg, r)[0]); };
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::omp::replicate(cfg.replications, draw));
    else
      benchmark::DoNotOptimize(kernels::serial::replicate(cfg.replications, draw));
  }
}

}  // namespace

BENCHMARK(BM_BinomialWeights_Serial)->Arg(4000)->Arg(1 << 16);
BENCHMARK(BM_BinomialWeights_Omp)->Arg(4000)->Arg(1 << 16);
BENCHMARK(BM_CurveSweep_Serial)->Arg(199)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CurveSweep_Omp)->Arg(199)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrinomialRows<false>)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrinomialRows<true>)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Replicate<false>)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Replicate<true>)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
