#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sobim/heuristics.hpp"
#include "sobim/sobol.hpp"

namespace sobim {

/// Configuration of the over-select-then-prune selection.
struct SimConfig {
  int k = 1;                  // final budget
  double over_select = 2.0;   // a > 1; ceil(a * k) candidates are collected
  std::string base = "deg";   // collecting heuristic label
  HeuristicParams base_params{};
  DiffusionConfig diffusion{DiffusionModel::IC, 0.01, 0.20, 100, 0, 0};  // index estimation
  bool reuse_cache = true;

  int candidate_count() const;      // ceil(over_select * k)
  void validate(NodeId n) const;    // throws DataError
};

/// One pruning iteration: the candidates still in play, the per-candidate
/// scores that drove the removal, and the cost of refreshing the table.
struct PruneIteration {
  std::vector<NodeId> candidates;     // before this removal
  std::vector<double> scores;         // total indices (or marginal spreads on fallback)
  NodeId removed = -1;
  std::int64_t simulated_rounds = 0;  // newly simulated rounds this iteration
  std::int64_t cached_cells = 0;
  bool degenerate_fallback = false;
};

struct PruneTrace {
  int k = 0;
  int candidate_count = 0;
  int rounds_per_estimate = 0;
  bool cache_enabled = true;
  std::vector<NodeId> collected;  // Collecting output, selection order
  std::vector<NodeId> selected;   // final k nodes
  std::vector<PruneIteration> iterations;
  std::int64_t total_simulated_rounds = 0;
  double collect_seconds = 0.0;
  double prune_seconds = 0.0;
};

struct SimResult {
  SeedSet seeds;
  PruneTrace trace;
};

/// Over-select ceil(a*k) candidates with the base heuristic, then repeatedly
/// rebuild the subset spread table over the remaining candidates and remove
/// the one with the smallest total index (ties to the smallest node id)
/// until exactly k remain.
///
/// When the table carries no signal (var(Y) = 0, or every total index is
/// exactly equal), the removal falls back to the smallest mean marginal
/// spread Y(full) - Y(full minus candidate), and the iteration is flagged.
///
/// With reuse_cache on, cells are memoized by seed-set content across
/// iterations: every table needed after a removal is a sub-table of the
/// first, so only the first iteration simulates. Caching never changes the
/// selected set, only the cost.
SimResult sim_select(const Graph& g, const SimConfig& cfg);

/// Analytic simulation-round total for the cache-off schedule:
/// sum over table sizes m = k+1 .. ceil(a*k) of (2^m - 1) * rounds.
/// Requires a cache-off trace and checks it against the analytic count;
/// throws DataError on a cache-on trace, Error on a ledger mismatch.
std::int64_t rounds_ledger(const PruneTrace& trace);

}  // namespace sobim
