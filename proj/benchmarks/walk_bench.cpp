#include <benchmark/benchmark.h>

#include "bridgewalk/matrix.hpp"
#include "bridgewalk/spectral.hpp"
#include "bridgewalk/walk.hpp"

namespace {

using namespace bridgewalk;

BridgedGraph complete_pair(int n) {
  return bridge_graphs(complete_graph(n), 0, complete_graph(n), 0);
}

BridgedGraph cycle_pair(int n) {
  return bridge_graphs(cycle_graph(n), 0, cycle_graph(n), 0);
}

void BM_walk_step_complete(benchmark::State& state) {
  BridgedGraph g = complete_pair(static_cast<int>(state.range(0)));
  WalkOperator walk(g, 0.01);
  WalkState psi = walk.initial_state();
  for (auto _ : state) {
    walk.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes.data());
  }
  state.SetItemsProcessed(state.iterations() * g.arc_count());
}
BENCHMARK(BM_walk_step_complete)->Arg(10)->Arg(20)->Arg(40);

void BM_walk_step_cycle(benchmark::State& state) {
  BridgedGraph g = cycle_pair(static_cast<int>(state.range(0)));
  WalkOperator walk(g, 0.01);
  WalkState psi = walk.initial_state();
  for (auto _ : state) {
    walk.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes.data());
  }
  state.SetItemsProcessed(state.iterations() * g.arc_count());
}
BENCHMARK(BM_walk_step_cycle)->Arg(100)->Arg(500)->Arg(2000);

void BM_dense_step(benchmark::State& state) {
  BridgedGraph g = complete_pair(static_cast<int>(state.range(0)));
  Matrix u = dense_evolution_matrix(g, 0.01);
  const int n = g.arc_count();
  std::vector<double> psi(n, 0.0), next(n, 0.0);
  psi[0] = 1.0;
  for (auto _ : state) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += u(i, j) * psi[j];
      next[i] = acc;
    }
    std::swap(psi, next);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_dense_step)->Arg(6)->Arg(10);

void BM_jacobi(benchmark::State& state) {
  BridgedGraph g = cycle_pair(static_cast<int>(state.range(0)));
  Matrix w = build_symmetrized_matrix(g, 0.01);
  for (auto _ : state) {
    EigenDecomposition eig = jacobi_eigendecompose(w);
    benchmark::DoNotOptimize(eig.values.data());
  }
}
BENCHMARK(BM_jacobi)->Arg(15)->Arg(30)->Arg(60);

void BM_evolve(benchmark::State& state) {
  BridgedGraph g = complete_pair(5);
  WalkOperator walk(g, 0.01);
  for (auto _ : state) {
    ProbabilitySeries series = walk.evolve(state.range(0));
    benchmark::DoNotOptimize(series.samples.data());
  }
}
BENCHMARK(BM_evolve)->Arg(150)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
