#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "sobim/diffusion.hpp"

using namespace sobim;

static void ic_cascade(benchmark::State& state) {
  const auto n = static_cast<NodeId>(state.range(0));
  Graph g = bench::er_graph(n, 10, 0.05, 0.20);
  const std::vector<NodeId> seeds{0, 1, 2, 3, 4};
  std::uint64_t round = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_ic(g, seeds, mix64(round++)));
  }
}
BENCHMARK(ic_cascade)->Arg(1000)->Arg(5000);

static void lt_cascade(benchmark::State& state) {
  const auto n = static_cast<NodeId>(state.range(0));
  Graph g = bench::er_graph(n, 10, 0.05, 0.20);
  const std::vector<NodeId> seeds{0, 1, 2, 3, 4};
  std::uint64_t round = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_lt(g, seeds, mix64(round++), 0.01, 0.20));
  }
}
BENCHMARK(lt_cascade)->Arg(1000)->Arg(5000);

static void spread_estimate_1000_rounds(benchmark::State& state) {
  Graph g = bench::er_graph(static_cast<NodeId>(state.range(0)), 10, 0.05, 0.20);
  const std::vector<NodeId> seeds{0, 1, 2, 3, 4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_spread(g, seeds, bench::ic(1000)));
  }
}
BENCHMARK(spread_estimate_1000_rounds)->Arg(300)->Arg(2000)->Unit(benchmark::kMillisecond);

static void exact_oracle_enumeration(benchmark::State& state) {
  // Path graph with the requested number of edges.
  std::vector<Edge> edges;
  for (int i = 0; i < state.range(0); ++i) edges.push_back({i, i + 1, 0.3});
  Graph g = Graph::from_edges(static_cast<NodeId>(state.range(0) + 1), std::move(edges));
  const std::vector<NodeId> seeds{0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_ic_spread(g, seeds));
  }
}
BENCHMARK(exact_oracle_enumeration)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
