#include "sobim/diffusion.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cmath>
#include <thread>

#include "sobim/errors.hpp"
#include "sobim/rng.hpp"
#include "sobim/stats.hpp"

namespace sobim {

void DiffusionConfig::validate() const {
  if (rounds < 1) throw DataError("diffusion rounds must be >= 1");
  if (max_steps < 0) throw DataError("max_steps must be >= 0 (0 = unbounded)");
  if (model == DiffusionModel::LT &&
      !(threshold_lo >= 0.0 && threshold_lo <= threshold_hi && threshold_hi <= 1.0))
    throw DataError("LT thresholds must satisfy 0 <= lo <= hi <= 1");
}

namespace {

int g_threads = 0;

std::vector<NodeId> checked_sorted_seeds(const Graph& g, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw DataError("seed set must be non-empty");
  std::vector<NodeId> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= g.node_count())
      throw DataError("seed id out of range: " + std::to_string(sorted[i]));
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw DataError("duplicate seed id: " + std::to_string(sorted[i]));
  }
  return sorted;
}

// Reusable per-worker buffers; cleared by epoch stamps instead of fills.
struct CascadeScratch {
  std::vector<std::uint32_t> active_stamp;
  std::vector<std::uint32_t> touch_stamp;  // LT: per-step candidate dedup
  std::vector<int> active_neighbors;       // LT: counts, valid when counted_stamp matches
  std::vector<std::uint32_t> counted_stamp;
  std::vector<double> thresholds;
  std::vector<NodeId> frontier, next, candidates;
  std::uint32_t epoch = 0;
  std::uint32_t tick = 0;

  void prepare(NodeId n) {
    const auto sz = static_cast<std::size_t>(n);
    if (active_stamp.size() < sz) {
      active_stamp.assign(sz, 0);
      touch_stamp.assign(sz, 0);
      active_neighbors.assign(sz, 0);
      counted_stamp.assign(sz, 0);
      thresholds.assign(sz, 0.0);
      epoch = 0;
      tick = 0;
    }
  }
};

NodeId run_ic(const Graph& g, std::span<const NodeId> seeds, SplitMix64& rng, int max_steps,
              CascadeScratch& s, std::vector<NodeId>* activated_out) {
  s.prepare(g.node_count());
  const std::uint32_t epoch = ++s.epoch;
  s.frontier.clear();
  NodeId activated = 0;
  for (NodeId v : seeds) {
    s.active_stamp[static_cast<std::size_t>(v)] = epoch;
    s.frontier.push_back(v);
    ++activated;
  }
  int step = 0;
  while (!s.frontier.empty() && (max_steps == 0 || step < max_steps)) {
    ++step;
    s.next.clear();
    for (NodeId u : s.frontier) {
      auto nbrs = g.neighbors(u);
      auto wts = g.neighbor_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const NodeId v = nbrs[i];
        if (s.active_stamp[static_cast<std::size_t>(v)] == epoch) continue;
        if (rng.bernoulli(wts[i])) {
          s.active_stamp[static_cast<std::size_t>(v)] = epoch;
          s.next.push_back(v);
          ++activated;
        }
      }
    }
    std::swap(s.frontier, s.next);
  }
  if (activated_out) {
    activated_out->clear();
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (s.active_stamp[static_cast<std::size_t>(v)] == epoch) activated_out->push_back(v);
    }
  }
  return activated;
}

NodeId run_lt(const Graph& g, std::span<const NodeId> seeds, SplitMix64& rng, double lo,
              double hi, int max_steps, CascadeScratch& s, std::vector<NodeId>* activated_out) {
  s.prepare(g.node_count());
  const NodeId n = g.node_count();
  const std::uint32_t epoch = ++s.epoch;
  for (NodeId v = 0; v < n; ++v) s.thresholds[static_cast<std::size_t>(v)] = rng.uniform(lo, hi);

  auto count_of = [&](NodeId v) -> int& {
    if (s.counted_stamp[static_cast<std::size_t>(v)] != epoch) {
      s.counted_stamp[static_cast<std::size_t>(v)] = epoch;
      s.active_neighbors[static_cast<std::size_t>(v)] = 0;
    }
    return s.active_neighbors[static_cast<std::size_t>(v)];
  };

  s.frontier.clear();
  NodeId activated = 0;
  for (NodeId v : seeds) {
    s.active_stamp[static_cast<std::size_t>(v)] = epoch;
    s.frontier.push_back(v);
    ++activated;
  }
  int step = 0;
  while (!s.frontier.empty() && (max_steps == 0 || step < max_steps)) {
    ++step;
    const std::uint32_t tick = ++s.tick;
    s.candidates.clear();
    for (NodeId u : s.frontier) {
      for (NodeId v : g.neighbors(u)) {
        if (s.active_stamp[static_cast<std::size_t>(v)] == epoch) continue;
        ++count_of(v);
        if (s.touch_stamp[static_cast<std::size_t>(v)] != tick) {
          s.touch_stamp[static_cast<std::size_t>(v)] = tick;
          s.candidates.push_back(v);
        }
      }
    }
    s.next.clear();
    for (NodeId v : s.candidates) {
      const double fraction = static_cast<double>(count_of(v)) / static_cast<double>(g.degree(v));
      if (fraction > s.thresholds[static_cast<std::size_t>(v)]) {
        s.active_stamp[static_cast<std::size_t>(v)] = epoch;
        s.next.push_back(v);
        ++activated;
      }
    }
    std::swap(s.frontier, s.next);
  }
  if (activated_out) {
    activated_out->clear();
    for (NodeId v = 0; v < n; ++v) {
      if (s.active_stamp[static_cast<std::size_t>(v)] == epoch) activated_out->push_back(v);
    }
  }
  return activated;
}

NodeId run_cascade(const Graph& g, std::span<const NodeId> seeds, const DiffusionConfig& cfg,
                   std::uint64_t rng_seed, CascadeScratch& scratch) {
  SplitMix64 rng(rng_seed);
  if (cfg.model == DiffusionModel::IC)
    return run_ic(g, seeds, rng, cfg.max_steps, scratch, nullptr);
  return run_lt(g, seeds, rng, cfg.threshold_lo, cfg.threshold_hi, cfg.max_steps, scratch, nullptr);
}

}  // namespace

void set_simulation_threads(int threads) { g_threads = threads < 0 ? 0 : threads; }

int simulation_threads() {
  if (g_threads > 0) return g_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<NodeId> simulate_ic(const Graph& g, std::span<const NodeId> seeds,
                                std::uint64_t rng_seed, int max_steps) {
  auto sorted = checked_sorted_seeds(g, seeds);
  CascadeScratch scratch;
  SplitMix64 rng(rng_seed);
  std::vector<NodeId> out;
  run_ic(g, sorted, rng, max_steps, scratch, &out);
  return out;
}

std::vector<NodeId> simulate_lt(const Graph& g, std::span<const NodeId> seeds,
                                std::uint64_t rng_seed, double threshold_lo, double threshold_hi,
                                int max_steps) {
  if (!(threshold_lo >= 0.0 && threshold_lo <= threshold_hi && threshold_hi <= 1.0))
    throw DataError("LT thresholds must satisfy 0 <= lo <= hi <= 1");
  auto sorted = checked_sorted_seeds(g, seeds);
  CascadeScratch scratch;
  SplitMix64 rng(rng_seed);
  std::vector<NodeId> out;
  run_lt(g, sorted, rng, threshold_lo, threshold_hi, max_steps, scratch, &out);
  return out;
}

SpreadEstimate estimate_spread(const Graph& g, std::span<const NodeId> seeds,
                               const DiffusionConfig& cfg) {
  std::vector<double> sizes;
  return estimate_spread_raw(g, seeds, cfg, sizes);
}

SpreadEstimate estimate_spread_raw(const Graph& g, std::span<const NodeId> seeds,
                                   const DiffusionConfig& cfg, std::vector<double>& sizes_out) {
  cfg.validate();
  auto sorted = checked_sorted_seeds(g, seeds);
  const std::uint64_t set_stream =
      derive_seed(derive_seed(cfg.master_seed, seed_tag::kSpread), hash_ids(sorted));

  const int rounds = cfg.rounds;
  std::vector<double>& sizes = sizes_out;
  sizes.assign(static_cast<std::size_t>(rounds), 0.0);
  const int workers = std::min(simulation_threads(), std::max(1, rounds / 64));
  if (workers <= 1) {
    CascadeScratch scratch;
    for (int i = 0; i < rounds; ++i) {
      sizes[static_cast<std::size_t>(i)] = static_cast<double>(
          run_cascade(g, sorted, cfg, derive_seed(set_stream, static_cast<std::uint64_t>(i)), scratch));
    }
  } else {
    // Each round's seed depends only on its index, and results land in
    // index order, so the partition into workers cannot change the output.
    std::atomic<int> next_round{0};
    auto work = [&]() {
      CascadeScratch scratch;
      for (;;) {
        const int i = next_round.fetch_add(1);
        if (i >= rounds) break;
        sizes[static_cast<std::size_t>(i)] = static_cast<double>(
            run_cascade(g, sorted, cfg, derive_seed(set_stream, static_cast<std::uint64_t>(i)), scratch));
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }

  const MeanStd ms = mean_std(sizes);
  return SpreadEstimate{ms.mean, ms.std_dev, rounds};
}

double exact_ic_spread(const Graph& g, std::span<const NodeId> seeds) {
  auto sorted = checked_sorted_seeds(g, seeds);
  const auto edges = g.edges();
  const std::size_t e = edges.size();
  if (e > 20) throw DataError("exact_ic_spread requires <= 20 edges, got " + std::to_string(e));

  // Compact ids over nodes that can possibly be reached.
  std::vector<NodeId> compact_of(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<NodeId> nodes;
  auto compact = [&](NodeId v) {
    if (compact_of[static_cast<std::size_t>(v)] == -1) {
      compact_of[static_cast<std::size_t>(v)] = static_cast<NodeId>(nodes.size());
      nodes.push_back(v);
    }
    return compact_of[static_cast<std::size_t>(v)];
  };
  for (NodeId v : sorted) compact(v);
  struct CEdge {
    NodeId a, b;
    double w;
  };
  std::vector<CEdge> cedges;
  cedges.reserve(e);
  for (const auto& ed : edges) cedges.push_back({compact(ed.u), compact(ed.v), ed.weight});

  const std::size_t m = nodes.size();
  std::vector<NodeId> parent(m);
  std::vector<NodeId> root_of_seed(sorted.size());
  std::vector<char> seed_root(m);

  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  double total = 0.0;
  const std::uint32_t subsets = 1u << e;
  for (std::uint32_t live = 0; live < subsets; ++live) {
    double prob = 1.0;
    for (std::size_t i = 0; i < e; ++i)
      prob *= (live >> i & 1u) ? cedges[i].w : 1.0 - cedges[i].w;
    if (prob == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) parent[i] = static_cast<NodeId>(i);
    for (std::size_t i = 0; i < e; ++i) {
      if (live >> i & 1u) {
        NodeId ra = find(cedges[i].a), rb = find(cedges[i].b);
        if (ra != rb) parent[static_cast<std::size_t>(rb)] = ra;
      }
    }
    std::fill(seed_root.begin(), seed_root.end(), 0);
    for (std::size_t i = 0; i < sorted.size(); ++i)
      seed_root[static_cast<std::size_t>(find(compact_of[static_cast<std::size_t>(sorted[i])]))] = 1;
    NodeId reached = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (seed_root[static_cast<std::size_t>(find(static_cast<NodeId>(i)))]) ++reached;
    total += prob * static_cast<double>(reached);
  }
  return total;
}

}  // namespace sobim
