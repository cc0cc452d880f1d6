#include <benchmark/benchmark.h>

#include "hazard/exact_matrix.hpp"

using namespace hazard;

static void RankSubcubeIntersect(benchmark::State& state) {
  ExactMatrix m = subcube_intersect_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_exact(m));
  }
}
BENCHMARK(RankSubcubeIntersect)->DenseRange(1, 4);

static void RankDisjointness(benchmark::State& state) {
  ExactMatrix m = disjointness_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_exact(m));
  }
}
BENCHMARK(RankDisjointness)->DenseRange(2, 8, 2);
