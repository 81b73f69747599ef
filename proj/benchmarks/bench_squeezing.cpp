#include <benchmark/benchmark.h>

#include "jspin/clebsch_gordan.hpp"
#include "jspin/ensemble.hpp"
#include "jspin/squeezing.hpp"

using namespace jspin;

namespace {

void OneAxisEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto st = reduced_halfspin(n, 0.9);
  for (auto _ : state) {
    auto evolved = one_axis_evolve(st, 0.3);
    benchmark::DoNotOptimize(evolved);
  }
  state.SetComplexityN(n);
}
BENCHMARK(OneAxisEvolve)->RangeMultiplier(2)->Range(10, 80)->Complexity();

void CountertwistEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto st = reduced_halfspin(n, 0.99);
  for (auto _ : state) {
    auto evolved = countertwist_exact_evolve(st, 0.02);
    benchmark::DoNotOptimize(evolved);
  }
}
BENCHMARK(CountertwistEvolve)->Arg(20)->Arg(40)->Arg(80);

void CovarianceSummary(benchmark::State& state) {
  const auto evolved = one_axis_evolve(reduced_halfspin(40, 0.9), 0.3);
  for (auto _ : state) {
    auto total = covariance_ellipse(evolved);
    auto blocks = block_covariance_ellipses(evolved);
    benchmark::DoNotOptimize(total);
    benchmark::DoNotOptimize(blocks);
  }
}
BENCHMARK(CovarianceSummary);

void OptimalMuSearch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_mu(HalfInt::from_twice(99)));
  }
}
BENCHMARK(OptimalMuSearch);

// Cold-cache cost of one coupling step worth of coefficients.
void ClebschGordanSweep(benchmark::State& state) {
  const HalfInt s = HalfInt(1);
  for (auto _ : state) {
    double acc = 0.0;
    for (int tj = 0; tj <= 24; tj += 2) {
      const HalfInt j = HalfInt::from_twice(tj);
      for (int tm = -tj; tm <= tj; tm += 2) {
        for (int tms = -2; tms <= 2; tms += 2) {
          acc += clebsch_gordan(j, HalfInt::from_twice(tm), s, HalfInt::from_twice(tms),
                                j + 1, HalfInt::from_twice(tm + tms));
        }
      }
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(ClebschGordanSweep);

}  // namespace
