#include <benchmark/benchmark.h>

#include "hazard/kw.hpp"

using namespace hazard;

static void MonorectMux1(benchmark::State& state) {
  KwMatrix m = kwu_matrix(TruthTable::multiplexer(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monorect_exact(m).leaves);
  }
}
BENCHMARK(MonorectMux1);

static void MonorectRange(benchmark::State& state) {
  // the 12x5 game of the width-2 window on four variables
  KwMatrix m = kwu_matrix(TruthTable::range_fn(4, 2, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monorect_exact(m).leaves);
  }
}
BENCHMARK(MonorectRange);

static void UnateCriterion3(benchmark::State& state) {
  TruthTable f = TruthTable::from_bit_string(3, "01101001");
  for (auto _ : state) {
    benchmark::DoNotOptimize(unate_criterion(f).criterion_holds);
  }
}
BENCHMARK(UnateCriterion3);
