#include <benchmark/benchmark.h>

#include "hazard/implicants.hpp"
#include "hazard/truth_table.hpp"

using namespace hazard;

static void ExtensionMemoBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TruthTable f = TruthTable::random_fn(n, 42);
  for (auto _ : state) {
    TernaryTable ext = TernaryTable::extension_of(f);
    benchmark::DoNotOptimize(ext);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ExtensionMemoBuild)->DenseRange(6, 12, 2);

static void ExtensionRecursiveEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TruthTable f = TruthTable::random_fn(n, 42);
  TritWord half_u = TritWord::all_unstable(n);
  for (int i = 1; i <= n; i += 2) half_u = half_u.with(i, Trit::one);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extension_eval(f, half_u));
  }
}
BENCHMARK(ExtensionRecursiveEval)->DenseRange(8, 16, 4);

static void DerivativePrimeScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TruthTable f = TruthTable::random_fn(n, 7);
  TernaryTable ext = TernaryTable::extension_of(f);
  for (auto _ : state) {
    TruthTable d = hazard_derivative(ext, BitWord(n, 0));
    benchmark::DoNotOptimize(prime_set(d, 1));
  }
}
BENCHMARK(DerivativePrimeScan)->DenseRange(6, 10, 2);
