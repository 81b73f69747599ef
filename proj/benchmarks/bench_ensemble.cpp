#include <benchmark/benchmark.h>

#include "jspin/combinatorics.hpp"
#include "jspin/ensemble.hpp"

using namespace jspin;

namespace {

void ReducedHalfspin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto st = reduced_halfspin(n, 0.95);
    benchmark::DoNotOptimize(st);
  }
  state.SetComplexityN(n);
}
BENCHMARK(ReducedHalfspin)->RangeMultiplier(2)->Range(50, 400)->Complexity();

void MarginalWithMoments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto st = reduced_halfspin(n, 0.95);
  for (auto _ : state) {
    auto marg = marginal_j(st);
    auto m = moments_from_state(st);
    benchmark::DoNotOptimize(marg);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(MarginalWithMoments)->Arg(100)->Arg(300);

void GeneralRecursionSpin1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const EnsembleSpec spec{n, HalfInt(1), {0.55, 0.25, 0.2}};
  for (auto _ : state) {
    auto st = reduced_general(spec);
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(GeneralRecursionSpin1)->Arg(8)->Arg(12)->Arg(16);

void DegeneracyTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    BigInt total = 0;
    for (HalfInt j : j_grid(n, HalfInt::from_twice(3))) {
      total += degeneracy(n, HalfInt::from_twice(3), j).count;
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(DegeneracyTable)->Arg(20)->Arg(60);

void GenBinomialRow(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto row = gen_binomial_row(n, 3);
    benchmark::DoNotOptimize(row);
  }
}
BENCHMARK(GenBinomialRow)->Arg(16)->Arg(64);

}  // namespace
