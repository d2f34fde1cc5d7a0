#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sobim/graph.hpp"

namespace sobim {

enum class DiffusionModel { IC, LT };

/// Cascade model configuration. max_steps = 0 runs every cascade to
/// quiescence; otherwise propagation halts after max_steps rounds of
/// activation.
struct DiffusionConfig {
  DiffusionModel model = DiffusionModel::IC;
  double threshold_lo = 0.01;  // LT node threshold range
  double threshold_hi = 0.20;
  int rounds = 1000;
  int max_steps = 0;
  std::uint64_t master_seed = 0;

  void validate() const;  // throws DataError
};

struct SpreadEstimate {
  double mean = 0.0;     // average activated-node count over `rounds` cascades
  double std_dev = 0.0;  // sample standard deviation across rounds
  int rounds = 0;
};

/// One independent-cascade run. Each node newly activated at step s makes a
/// single activation attempt per still-inactive neighbor at step s+1,
/// succeeding with the edge weight; attempts iterate neighbors in ascending
/// id order with one RNG draw per attempt, making a single cascade
/// replayable from its seed. Returns the activated set (seeds included).
std::vector<NodeId> simulate_ic(const Graph& g, std::span<const NodeId> seeds,
                                std::uint64_t rng_seed, int max_steps = 0);

/// One linear-threshold run. Per-cascade thresholds are drawn i.i.d. uniform
/// from [threshold_lo, threshold_hi) at cascade start; an inactive node
/// activates next step when its active-neighbor fraction strictly exceeds
/// its threshold. Degree-0 non-seeds have fraction 0 and never activate.
std::vector<NodeId> simulate_lt(const Graph& g, std::span<const NodeId> seeds,
                                std::uint64_t rng_seed, double threshold_lo,
                                double threshold_hi, int max_steps = 0);

/// Monte Carlo spread estimate over cfg.rounds cascades. Per-round seeds are
/// derived from (master_seed, canonical hash of the seed set, round index),
/// so the result is a pure function of the inputs, identical for any thread
/// count and any execution order of the rounds.
SpreadEstimate estimate_spread(const Graph& g, std::span<const NodeId> seeds,
                               const DiffusionConfig& cfg);

/// As estimate_spread, additionally returning the per-round cascade sizes in
/// round-index order.
SpreadEstimate estimate_spread_raw(const Graph& g, std::span<const NodeId> seeds,
                                   const DiffusionConfig& cfg, std::vector<double>& sizes_out);

/// Exact expected IC spread by live-edge enumeration over all 2^|E| edge
/// subsets. Requires |E| <= 20; intended as a test oracle on tiny graphs.
double exact_ic_spread(const Graph& g, std::span<const NodeId> seeds);

/// Caps the worker thread count used by estimate_spread (0 = one per
/// hardware thread). Results never depend on this setting.
void set_simulation_threads(int threads);
int simulation_threads();

}  // namespace sobim
