// Parallel kernels against their serial references.
// Parallel benchmarks take the OpenMP thread count as their argument.

#include <benchmark/benchmark.h>

#include <cmath>

#include "kfa/arith.hpp"
#include "kfa/averages.hpp"
#include "kfa/kfull.hpp"
#include "kfa/parallel.hpp"

namespace {

constexpr kfa::u64 kSieveN = 10'000'000;
constexpr kfa::u64 kKfullN = 10'000'000'000;

const kfa::FactorSieve& big_sieve() {
  static const kfa::FactorSieve s = kfa::build_sieve(kSieveN);
  return s;
}

const kfa::FactorSieve& kfull_sieve() {
  static const kfa::FactorSieve s = kfa::build_sieve(kfa::kfull_sieve_limit(kKfullN, 2));
  return s;
}

void BM_OmegaHistogramParallel(benchmark::State& state) {
  kfa::set_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kfa::omega_histogram(big_sieve(), kSieveN));
}
BENCHMARK(BM_OmegaHistogramParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OmegaHistogramSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfa::reference::omega_histogram(big_sieve(), kSieveN));
  }
}
BENCHMARK(BM_OmegaHistogramSerial)->Unit(benchmark::kMillisecond);

void BM_KfullHistogramParallel(benchmark::State& state) {
  kfa::set_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfa::kfull_omega_histogram(kKfullN, 2, kfull_sieve()));
  }
}
BENCHMARK(BM_KfullHistogramParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KfullHistogramSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfa::reference::kfull_omega_histogram(kKfullN, 2, kfull_sieve()));
  }
}
BENCHMARK(BM_KfullHistogramSerial)->Unit(benchmark::kMillisecond);

void BM_KfullAverageHistogram(benchmark::State& state) {
  kfa::set_threads(static_cast<int>(state.range(0)));
  const auto obs = kfa::liouville_observable();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfa::kfull_average(obs, kKfullN, 2, kfull_sieve()));
  }
}
BENCHMARK(BM_KfullAverageHistogram)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_KfullAverageSerial(benchmark::State& state) {
  const auto obs = kfa::liouville_observable();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfa::reference::kfull_average(obs, kKfullN, 2, kfull_sieve()));
  }
}
BENCHMARK(BM_KfullAverageSerial)->Unit(benchmark::kMillisecond);

double inv_pow(kfa::u64 p) { return std::pow(static_cast<double>(p), -1.5); }

void BM_PrimeSumParallel(benchmark::State& state) {
  kfa::set_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kfa::prime_sum(kSieveN, inv_pow));
}
BENCHMARK(BM_PrimeSumParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_PrimeSumSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kfa::reference::prime_sum(kSieveN, inv_pow));
}
BENCHMARK(BM_PrimeSumSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
