#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "sobim/rng.hpp"
#include "sobim/sobol.hpp"

using namespace sobim;

namespace {

SubsetSpreadTable synthetic_table(int width, std::uint64_t seed) {
  SubsetSpreadTable t;
  for (int i = 0; i < width; ++i) t.candidates.push_back(i);
  t.cells.resize(std::size_t{1} << width);
  SplitMix64 rng(seed);
  t.cells[0] = SpreadEstimate{0.0, 0.0, 0};
  for (std::size_t m = 1; m < t.cells.size(); ++m)
    t.cells[m] = SpreadEstimate{rng.next_double() * 100.0, 1.0, 100};
  return t;
}

}  // namespace

static void table_build(benchmark::State& state) {
  Graph g = bench::er_graph(300, 10, 0.05, 0.20);
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < static_cast<NodeId>(state.range(0)); ++v) candidates.push_back(v);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_subset_table(g, candidates, bench::ic(20)));
  }
}
BENCHMARK(table_build)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void total_indices(benchmark::State& state) {
  auto t = synthetic_table(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < t.width(); ++i) acc += total_index(t, i);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(total_indices)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

static void pairwise_decomposition(benchmark::State& state) {
  auto t = synthetic_table(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_decomposition(t, 2));
  }
}
BENCHMARK(pairwise_decomposition)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void full_order_decomposition(benchmark::State& state) {
  auto t = synthetic_table(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(full_decomposition(t, t.width()));
  }
}
BENCHMARK(full_order_decomposition)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void anova_lattice(benchmark::State& state) {
  auto t = synthetic_table(static_cast<int>(state.range(0)), 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(anova_oracle(t));
  }
}
BENCHMARK(anova_lattice)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
