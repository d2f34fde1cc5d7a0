#include "sobim/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sobim/errors.hpp"
#include "sobim/rng.hpp"

namespace sobim {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

SpreadEstimate evaluate_spread(const Graph& g, std::span<const NodeId> seeds,
                               const DiffusionConfig& model, int eval_rounds,
                               std::uint64_t master_seed, std::vector<double>* raw_sizes) {
  DiffusionConfig eval = model;
  eval.rounds = eval_rounds;
  eval.master_seed = derive_seed(master_seed, seed_tag::kEvaluate);
  if (raw_sizes != nullptr) return estimate_spread_raw(g, seeds, eval, *raw_sizes);
  return estimate_spread(g, seeds, eval);
}

CaseStudyReport run_case_study(const Graph& g, std::span<const NodeId> seeds,
                               const DiffusionConfig& table_cfg, int eval_rounds) {
  if (seeds.empty() || seeds.size() > 10)
    throw DataError("case study supports 1..10 seeds");
  if (eval_rounds < 1) throw DataError("evaluation rounds must be >= 1");

  CaseStudyReport report;
  report.table = build_subset_table(g, seeds, table_cfg);
  report.y_moments = moments(report.table);

  const int m = report.table.width();
  const SpreadEstimate full =
      evaluate_spread(g, seeds, table_cfg, eval_rounds, table_cfg.master_seed);

  std::vector<double> totals, marginals;
  for (int i = 0; i < m; ++i) {
    CaseStudySeed entry;
    entry.node = report.table.candidates[static_cast<std::size_t>(i)];
    entry.total_index = total_index(report.table, i);
    entry.total_contribution = entry.total_index * report.y_moments.variance;

    std::vector<NodeId> rest;
    for (int j = 0; j < m; ++j) {
      if (j != i) rest.push_back(report.table.candidates[static_cast<std::size_t>(j)]);
    }
    SpreadEstimate without{0.0, 0.0, eval_rounds};  // empty set spreads nothing
    if (!rest.empty())
      without = evaluate_spread(g, rest, table_cfg, eval_rounds, table_cfg.master_seed);
    entry.marginal_mean = full.mean - without.mean;
    entry.marginal_std = std::hypot(full.std_dev, without.std_dev);
    totals.push_back(entry.total_index);
    marginals.push_back(entry.marginal_mean);
    report.seeds.push_back(entry);
  }
  report.rank_correlation = spearman(totals, marginals);

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      CaseStudyPair pair;
      pair.a = report.table.candidates[static_cast<std::size_t>(i)];
      pair.b = report.table.candidates[static_cast<std::size_t>(j)];
      pair.interaction = higher_order_index(report.table, (1u << i) | (1u << j));
      pair.interaction_contribution = pair.interaction * report.y_moments.variance;
      pair.distance = bfs_distance(g, pair.a, pair.b);
      report.pairs.push_back(pair);
    }
  }
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const CaseStudyPair& x, const CaseStudyPair& y) {
              const int dx = x.distance.value_or(std::numeric_limits<int>::max());
              const int dy = y.distance.value_or(std::numeric_limits<int>::max());
              if (dx != dy) return dx < dy;
              return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
  return report;
}

BenchRow run_bench_row(const Graph& g, const std::string& label, const SimConfig& sim_cfg,
                       int eval_rounds, std::uint64_t master_seed, bool keep_raw) {
  if (eval_rounds < 1) throw DataError("evaluation rounds must be >= 1");
  SimConfig cfg = sim_cfg;
  cfg.base = label;
  cfg.diffusion.master_seed = master_seed;
  cfg.base_params.greedy_cfg.master_seed = master_seed;
  cfg.validate(g.node_count());

  BenchRow row;
  row.heuristic = label;

  {
    auto t0 = std::chrono::steady_clock::now();
    row.plain.seeds = select_by_label(g, label, cfg.k, cfg.base_params);
    row.plain.collect_seconds = seconds_since(t0);
    auto t1 = std::chrono::steady_clock::now();
    row.plain.spread = evaluate_spread(g, row.plain.seeds.nodes, cfg.diffusion, eval_rounds,
                                       master_seed, keep_raw ? &row.plain.raw_sizes : nullptr);
    row.plain.evaluate_seconds = seconds_since(t1);
  }
  {
    SimResult sim = sim_select(g, cfg);
    row.pruned.seeds = sim.seeds;
    row.trace = std::move(sim.trace);
    row.pruned.collect_seconds = row.trace.collect_seconds;
    row.pruned.prune_seconds = row.trace.prune_seconds;
    auto t1 = std::chrono::steady_clock::now();
    row.pruned.spread = evaluate_spread(g, row.pruned.seeds.nodes, cfg.diffusion, eval_rounds,
                                        master_seed, keep_raw ? &row.pruned.raw_sizes : nullptr);
    row.pruned.evaluate_seconds = seconds_since(t1);
  }
  return row;
}

}  // namespace sobim
