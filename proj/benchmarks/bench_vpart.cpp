#include <benchmark/benchmark.h>

#include "vpart/community.hpp"
#include "vpart/decomposition.hpp"
#include "vpart/generator.hpp"
#include "vpart/graph.hpp"
#include "vpart/lp.hpp"
#include "vpart/subgradient.hpp"

namespace {

using namespace vpart;

TransportInstance make(int n_demand, int n_supply, double access) {
  GeneratorConfig c;
  c.n_demand = n_demand;
  c.n_supply = n_supply;
  c.demand_weights = metro_weights(c.grid);
  c.supply_weights = metro_weights(c.grid, 0.75);
  c.d_max = calibrate_dmax(c, access);
  return generate_instance(c);
}

void BM_Agglomerate(benchmark::State& state) {
  const auto inst = make(static_cast<int>(state.range(0)), 300, 20);
  const WeightedGraph g = build_demand_graph(inst);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_agglomerate(g));
  state.counters["edges"] = g.num_edges();
}
BENCHMARK(BM_Agglomerate)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SolveFull(benchmark::State& state) {
  const auto inst = make(static_cast<int>(state.range(0)), 300, 20);
  for (auto _ : state) benchmark::DoNotOptimize(solve_full(inst));
  state.counters["arcs"] = inst.num_arcs();
}
BENCHMARK(BM_SolveFull)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

// Re-solving a block after a small multiplier change, with and without the
// previous basis.
void BM_BlockResolve(benchmark::State& state) {
  const bool warm = state.range(0) != 0;
  const auto inst = make(500, 300, 20);
  const Decomposition dec =
      classify_suppliers(inst, greedy_agglomerate(build_demand_graph(inst)).partition);
  std::vector<double> lambda(inst.num_supplies(), 0.0);
  BlockSolver solver(inst, dec, 0);
  solver.solve(lambda);
  long t = 0;
  for (auto _ : state) {
    for (int j : dec.dualized) lambda[j] = static_cast<double>((t + j) % 7);
    ++t;
    if (warm) {
      benchmark::DoNotOptimize(solver.solve(lambda));
    } else {
      BlockSolver cold(inst, dec, 0);
      benchmark::DoNotOptimize(cold.solve(lambda));
    }
  }
}
BENCHMARK(BM_BlockResolve)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_SubgradientIterations(benchmark::State& state) {
  const bool block = state.range(0) != 0;
  const int width = static_cast<int>(state.range(1));
  const auto inst = make(500, 300, 20);
  const Decomposition dec =
      block ? classify_suppliers(inst, greedy_agglomerate(build_demand_graph(inst)).partition)
            : baseline_decomposition(inst);
  SolverParams p;
  p.reference_optimum = solve_full(inst).objective;
  p.gap_target = 1e-12;
  p.max_iterations = 100;
  p.width = width;
  for (auto _ : state) benchmark::DoNotOptimize(run(inst, dec, p));
  state.SetItemsProcessed(state.iterations() * p.max_iterations);
}
BENCHMARK(BM_SubgradientIterations)
    ->ArgNames({"block", "width"})
    ->Args({0, 1})
    ->Args({1, 1})
    ->Args({1, 3})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
