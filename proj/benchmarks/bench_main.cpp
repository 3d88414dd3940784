#include <benchmark/benchmark.h>

#include "locdim/gallery.hpp"
#include "locdim/homogeneity.hpp"
#include "locdim/measure.hpp"
#include "locdim/moran.hpp"
#include "locdim/spectrum.hpp"

using namespace locdim;

static void BM_SolveTau(benchmark::State& state) {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  double q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_tau(spec, q));
    q = (q < 4.0) ? q + 0.25 : -4.0;
  }
}
BENCHMARK(BM_SolveTau);

static void BM_BuildSelfSimilarTree(benchmark::State& state) {
  auto spec = cantor_spec(1.0 / 3.0, 0.7);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_selfsimilar_tree(spec, depth));
  }
  state.SetComplexityN(1 << depth);
}
BENCHMARK(BM_BuildSelfSimilarTree)->Arg(8)->Arg(12)->Arg(16)->Complexity();

static void BM_PartitionSum(benchmark::State& state) {
  auto tree = build_selfsimilar_tree(cantor_spec(1.0 / 3.0, 0.7),
                                     static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tree.partition_sum(0.0, MeasureTree::kWholeSpace, tree.max_level(), 2.0));
  }
}
BENCHMARK(BM_PartitionSum)->Arg(10)->Arg(14);

static void BM_TauGlobalTree(benchmark::State& state) {
  auto tree = build_selfsimilar_tree(cantor_spec(1.0 / 3.0, 0.7), 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_global_tree(tree, 2.0, 2, 12));
  }
}
BENCHMARK(BM_TauGlobalTree);

static void BM_AtomicBallMass(benchmark::State& state) {
  auto mu = gallery_ring_measure(12, static_cast<int>(state.range(0)));
  double r = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu->ball_mass(point2d(0, 0), r));
    r = (r < 1.0) ? r * 1.5 : 0.01;
  }
}
BENCHMARK(BM_AtomicBallMass)->Arg(256)->Arg(1024);

static void BM_HomCount(benchmark::State& state) {
  auto tree = build_selfsimilar_tree(cantor_spec(), 10);
  HomogeneityQuery q;
  q.x = point1d(0);
  q.r = 1.0;
  q.delta = 1.0 / 27;
  q.epsilon = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hom_count(tree, q));
  }
}
BENCHMARK(BM_HomCount);

BENCHMARK_MAIN();
