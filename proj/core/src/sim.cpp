#include "sobim/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sobim/errors.hpp"

namespace sobim {

int SimConfig::candidate_count() const {
  // Guard against ceil(2.02 -> 2.0200000000000005) style FP drift.
  return static_cast<int>(std::ceil(over_select * static_cast<double>(k) - 1e-9));
}

void SimConfig::validate(NodeId n) const {
  if (k < 1) throw DataError("budget k must be >= 1");
  if (!(over_select > 1.0)) throw DataError("over-selection factor must be > 1");
  diffusion.validate();
  const int m = candidate_count();
  if (m > 32) throw DataError("candidate count ceil(a*k) = " + std::to_string(m) +
                              " exceeds the 32-candidate cap");
  if (m > n) throw DataError("candidate count ceil(a*k) exceeds node count");
}

namespace {

struct Removal {
  std::vector<double> scores;
  std::size_t index;  // position in the candidate list
  bool fallback;
};

Removal pick_removal(const SubsetSpreadTable& table) {
  const int m = table.width();
  const std::uint32_t full = m == 32 ? ~0u : (1u << m) - 1u;
  Removal r;
  r.scores.resize(static_cast<std::size_t>(m));

  const double var = moments(table).variance;
  bool fallback = var <= 0.0;
  if (!fallback) {
    for (int i = 0; i < m; ++i) r.scores[static_cast<std::size_t>(i)] = total_index(table, i);
    // All-equal indices carry no ranking signal either.
    fallback = std::all_of(r.scores.begin(), r.scores.end(),
                           [&](double s) { return s == r.scores[0]; });
  }
  if (fallback) {
    for (int i = 0; i < m; ++i) {
      r.scores[static_cast<std::size_t>(i)] =
          table.cell(full).mean - table.cell(full & ~(1u << i)).mean;
    }
  }
  r.fallback = fallback;

  r.index = 0;
  for (std::size_t i = 1; i < r.scores.size(); ++i) {
    const double si = r.scores[i], sb = r.scores[r.index];
    const NodeId ni = table.candidates[i], nb = table.candidates[r.index];
    if (si < sb || (si == sb && ni < nb)) r.index = i;
  }
  return r;
}

}  // namespace

SimResult sim_select(const Graph& g, const SimConfig& cfg) {
  cfg.validate(g.node_count());
  const int m = cfg.candidate_count();

  const auto collect_start = std::chrono::steady_clock::now();
  SeedSet collected = select_by_label(g, cfg.base, m, cfg.base_params);
  const auto prune_start = std::chrono::steady_clock::now();

  SimResult result;
  result.trace.k = cfg.k;
  result.trace.candidate_count = m;
  result.trace.rounds_per_estimate = cfg.diffusion.rounds;
  result.trace.cache_enabled = cfg.reuse_cache;
  result.trace.collected = collected.nodes;

  SpreadCache cache;
  std::vector<NodeId> current = collected.nodes;
  while (static_cast<int>(current.size()) > cfg.k) {
    TableBuildStats stats;
    SubsetSpreadTable table = build_subset_table(
        g, current, cfg.diffusion, cfg.reuse_cache ? &cache : nullptr, &stats);
    const Removal removal = pick_removal(table);

    PruneIteration iter;
    iter.candidates = current;
    iter.scores = removal.scores;
    iter.removed = current[removal.index];
    iter.simulated_rounds = stats.simulated_rounds;
    iter.cached_cells = stats.cached_cells;
    iter.degenerate_fallback = removal.fallback;
    result.trace.total_simulated_rounds += stats.simulated_rounds;
    result.trace.iterations.push_back(std::move(iter));

    current.erase(current.begin() + static_cast<std::ptrdiff_t>(removal.index));
  }

  result.trace.collect_seconds =
      std::chrono::duration<double>(prune_start - collect_start).count();
  result.trace.prune_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - prune_start).count();
  result.trace.selected = current;
  result.seeds.nodes = std::move(current);
  result.seeds.origin = "sim(base=" + cfg.base + ",k=" + std::to_string(cfg.k) +
                        ",m=" + std::to_string(m) + ",r=" + std::to_string(cfg.diffusion.rounds) + ")";
  return result;
}

std::int64_t rounds_ledger(const PruneTrace& trace) {
  if (trace.cache_enabled)
    throw DataError("rounds ledger is defined for cache-off traces only");
  std::int64_t expected = 0;
  for (int m = trace.k + 1; m <= trace.candidate_count; ++m)
    expected += ((std::int64_t{1} << m) - 1) * trace.rounds_per_estimate;
  if (expected != trace.total_simulated_rounds)
    throw Error("simulation-round ledger mismatch: analytic " + std::to_string(expected) +
                " vs recorded " + std::to_string(trace.total_simulated_rounds));
  return expected;
}

}  // namespace sobim
