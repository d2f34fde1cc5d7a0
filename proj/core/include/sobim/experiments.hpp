#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sobim/sim.hpp"
#include "sobim/sobol.hpp"
#include "sobim/stats.hpp"

namespace sobim {

/// As estimate_spread, additionally returning the per-round cascade sizes
/// (in round-index order), so emitted statistics can be recomputed from the
/// raw observations.
SpreadEstimate estimate_spread_raw(const Graph& g, std::span<const NodeId> seeds,
                                   const DiffusionConfig& cfg, std::vector<double>& sizes_out);

/// Evaluation-grade estimate on a seed stream disjoint from every selection
/// stream derived from the same master seed.
SpreadEstimate evaluate_spread(const Graph& g, std::span<const NodeId> seeds,
                               const DiffusionConfig& model, int eval_rounds,
                               std::uint64_t master_seed,
                               std::vector<double>* raw_sizes = nullptr);

// --- Case study -----------------------------------------------------------

struct CaseStudySeed {
  NodeId node = -1;
  double total_index = 0.0;
  double total_contribution = 0.0;  // total_index * var(Y)
  double marginal_mean = 0.0;       // spread(all) - spread(all minus node)
  double marginal_std = 0.0;        // propagated per-cascade deviation
};

struct CaseStudyPair {
  NodeId a = -1, b = -1;
  double interaction = 0.0;               // pairwise pure effect
  double interaction_contribution = 0.0;  // interaction * var(Y)
  std::optional<int> distance;            // hop count; empty when unreachable
};

struct CaseStudyReport {
  SubsetSpreadTable table;
  Moments y_moments;
  std::vector<CaseStudySeed> seeds;
  std::vector<CaseStudyPair> pairs;  // sorted by distance, unreachable last
  double rank_correlation = 0.0;     // Spearman(total index, marginal contribution)
};

/// Builds the inclusion table over the given seeds (at most 10), computes
/// per-seed total indices, re-estimates marginal contributions on the
/// evaluation stream, and pairs them with pairwise interactions + distances.
CaseStudyReport run_case_study(const Graph& g, std::span<const NodeId> seeds,
                               const DiffusionConfig& table_cfg, int eval_rounds);

// --- Benchmark rows ---------------------------------------------------------

struct BenchVariant {
  SeedSet seeds;
  SpreadEstimate spread;
  double collect_seconds = 0.0;
  double prune_seconds = 0.0;
  double evaluate_seconds = 0.0;
  std::vector<double> raw_sizes;  // filled when keep_raw is requested
};

struct BenchRow {
  std::string heuristic;
  BenchVariant plain;     // the heuristic at budget k
  BenchVariant pruned;    // over-select + prune via the same heuristic
  PruneTrace trace;
};

/// Runs one heuristic with and without the over-select/prune stage and
/// evaluates both seed sets with eval_rounds cascades on a shared
/// evaluation stream (identical seed sets therefore evaluate identically).
BenchRow run_bench_row(const Graph& g, const std::string& label, const SimConfig& sim_cfg,
                       int eval_rounds, std::uint64_t master_seed, bool keep_raw = false);

}  // namespace sobim
