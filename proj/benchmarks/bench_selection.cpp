#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "sobim/heuristics.hpp"
#include "sobim/sim.hpp"

using namespace sobim;

static void degree_selection(benchmark::State& state) {
  Graph g = bench::er_graph(static_cast<NodeId>(state.range(0)), 10, 0.05, 0.20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_degree(g, 10));
  }
}
BENCHMARK(degree_selection)->Arg(1000)->Arg(5000);

static void eigen_selection(benchmark::State& state) {
  Graph g = bench::er_graph(static_cast<NodeId>(state.range(0)), 10, 0.05, 0.20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_eigen(g, 10));
  }
}
BENCHMARK(eigen_selection)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void degree_discount_selection(benchmark::State& state) {
  Graph g = bench::er_graph(static_cast<NodeId>(state.range(0)), 10, 0.05, 0.20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_degree_discount(g, 10, 0.125));
  }
}
BENCHMARK(degree_discount_selection)->Arg(1000)->Arg(5000);

static void sigma_selection(benchmark::State& state) {
  Graph g = bench::er_graph(static_cast<NodeId>(state.range(0)), 10, 0.05, 0.20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_sigma(g, 10, 3));
  }
}
BENCHMARK(sigma_selection)->Arg(1000)->Arg(5000);

static void pi_selection(benchmark::State& state) {
  Graph g = bench::er_graph(static_cast<NodeId>(state.range(0)), 10, 0.05, 0.20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_pi(g, 10, 3));
  }
}
BENCHMARK(pi_selection)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

static void prune_pipeline(benchmark::State& state) {
  Graph g = bench::er_graph(300, 10, 0.05, 0.20);
  SimConfig cfg;
  cfg.k = static_cast<int>(state.range(0));
  cfg.over_select = 2.0;
  cfg.diffusion = bench::ic(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim_select(g, cfg));
  }
}
BENCHMARK(prune_pipeline)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
