#include "sobim/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sobim/errors.hpp"
#include "sobim/rng.hpp"

namespace sobim {

namespace {

void check_budget(const Graph& g, int k) {
  if (k < 1) throw DataError("budget k must be >= 1");
  if (k > g.node_count())
    throw DataError("budget k = " + std::to_string(k) + " exceeds node count " +
                    std::to_string(g.node_count()));
}

/// Top-k node ids by score, ties to the smallest id. Sorting the full id
/// range keeps the k-set a prefix of the (k+1)-set.
std::vector<NodeId> top_k_by_score(const std::vector<double>& score, int k) {
  std::vector<NodeId> ids(score.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
    const double sa = score[static_cast<std::size_t>(a)];
    const double sb = score[static_cast<std::size_t>(b)];
    return sa != sb ? sa > sb : a < b;
  });
  ids.resize(static_cast<std::size_t>(k));
  return ids;
}

}  // namespace

SeedSet select_degree(const Graph& g, int k) {
  check_budget(g, k);
  const NodeId n = g.node_count();
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<char> picked(static_cast<std::size_t>(n), 0);
  for (NodeId v = 0; v < n; ++v) degree[static_cast<std::size_t>(v)] = g.degree(v);

  SeedSet out;
  out.origin = "deg";
  for (int it = 0; it < k; ++it) {
    NodeId best = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (picked[static_cast<std::size_t>(v)]) continue;
      if (best == -1 || degree[static_cast<std::size_t>(v)] > degree[static_cast<std::size_t>(best)])
        best = v;
    }
    picked[static_cast<std::size_t>(best)] = 1;
    out.nodes.push_back(best);
    for (NodeId u : g.neighbors(best)) {
      if (!picked[static_cast<std::size_t>(u)]) --degree[static_cast<std::size_t>(u)];
    }
  }
  return out;
}

SeedSet select_eigen(const Graph& g, int k, bool weighted, double tol, int max_iter) {
  check_budget(g, k);
  const NodeId n = g.node_count();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> x(nn, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(nn);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (NodeId u = 0; u < n; ++u) {
      double acc = x[static_cast<std::size_t>(u)];  // the +I shift
      auto nbrs = g.neighbors(u);
      auto wts = g.neighbor_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        acc += (weighted ? wts[i] : 1.0) * x[static_cast<std::size_t>(nbrs[i])];
      y[static_cast<std::size_t>(u)] = acc;
    }
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw DegeneracyError("eigenvector iteration collapsed to zero");
    double delta = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      y[i] /= norm;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < tol) {
      SeedSet out;
      out.origin = weighted ? "eig(weighted)" : "eig";
      out.nodes = top_k_by_score(x, k);
      return out;
    }
  }
  throw DegeneracyError("eigenvector centrality did not converge in " +
                        std::to_string(max_iter) + " iterations");
}

SeedSet select_greedy(const Graph& g, int k, const DiffusionConfig& cfg) {
  check_budget(g, k);
  cfg.validate();
  const NodeId n = g.node_count();
  DiffusionConfig eval = cfg;
  eval.master_seed = derive_seed(cfg.master_seed, seed_tag::kGreedy);

  SeedSet out;
  out.origin = "grd(r=" + std::to_string(cfg.rounds) + ")";
  std::vector<char> picked(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> trial;
  for (int it = 0; it < k; ++it) {
    const double base = out.nodes.empty() ? 0.0 : estimate_spread(g, out.nodes, eval).mean;
    NodeId best = -1;
    double best_gain = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (picked[static_cast<std::size_t>(v)]) continue;
      trial = out.nodes;
      trial.push_back(v);
      // Each candidate set draws its own content-keyed stream, so no
      // candidate comparison shares randomness.
      const double gain = estimate_spread(g, trial, eval).mean - base;
      if (best == -1 || gain > best_gain) {
        best = v;
        best_gain = gain;
      }
    }
    picked[static_cast<std::size_t>(best)] = 1;
    out.nodes.push_back(best);
  }
  return out;
}

double default_discount_probability(const Graph& g) { return g.mean_edge_weight(); }

SeedSet select_degree_discount(const Graph& g, int k, double p) {
  check_budget(g, k);
  if (!(p >= 0.0 && p <= 1.0)) throw DataError("discount probability outside [0, 1]");
  const NodeId n = g.node_count();
  std::vector<double> score(static_cast<std::size_t>(n));
  std::vector<int> seeded_neighbors(static_cast<std::size_t>(n), 0);
  std::vector<char> picked(static_cast<std::size_t>(n), 0);
  for (NodeId v = 0; v < n; ++v) score[static_cast<std::size_t>(v)] = g.degree(v);

  SeedSet out;
  out.origin = "dd(p=" + std::to_string(p) + ")";
  for (int it = 0; it < k; ++it) {
    NodeId best = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (picked[static_cast<std::size_t>(v)]) continue;
      if (best == -1 || score[static_cast<std::size_t>(v)] > score[static_cast<std::size_t>(best)])
        best = v;
    }
    picked[static_cast<std::size_t>(best)] = 1;
    out.nodes.push_back(best);
    for (NodeId v : g.neighbors(best)) {
      if (picked[static_cast<std::size_t>(v)]) continue;
      const double d = g.degree(v);
      const double t = ++seeded_neighbors[static_cast<std::size_t>(v)];
      score[static_cast<std::size_t>(v)] = d - 2.0 * t - (d - t) * t * p;
    }
  }
  return out;
}

SeedSet select_sigma(const Graph& g, int k, int horizon) {
  check_budget(g, k);
  if (horizon < 1) throw DataError("sigma horizon must be >= 1");
  const NodeId n = g.node_count();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> v(nn, 0.0), next(nn);
  for (int tau = 0; tau < horizon; ++tau) {
    for (NodeId u = 0; u < n; ++u) {
      double acc = 0.0;
      auto nbrs = g.neighbors(u);
      auto wts = g.neighbor_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        acc += wts[i] * (v[static_cast<std::size_t>(nbrs[i])] + 1.0);
      next[static_cast<std::size_t>(u)] = acc;
    }
    v.swap(next);
  }
  SeedSet out;
  out.origin = "sigma(t=" + std::to_string(horizon) + ")";
  out.nodes = top_k_by_score(v, k);
  return out;
}

SeedSet select_pi(const Graph& g, int k, int horizon, NodeId dense_cap) {
  check_budget(g, k);
  if (horizon < 1) throw DataError("pi horizon must be >= 1");
  const NodeId n = g.node_count();
  if (n > dense_cap)
    throw DataError("pi requires dense n x n matrices; n = " + std::to_string(n) +
                    " exceeds the cap " + std::to_string(dense_cap));
  const auto nn = static_cast<std::size_t>(n);
  // power = A^r (dense), updated by sparse right-multiplication;
  // residual accumulates prod(J - A^r) elementwise, starting from J.
  std::vector<double> power(nn * nn, 0.0), next(nn * nn);
  std::vector<double> residual(nn * nn, 1.0);
  for (NodeId u = 0; u < n; ++u) {
    auto nbrs = g.neighbors(u);
    auto wts = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      power[static_cast<std::size_t>(u) * nn + static_cast<std::size_t>(nbrs[i])] = wts[i];
  }
  for (int r = 1;; ++r) {
    for (std::size_t idx = 0; idx < nn * nn; ++idx) residual[idx] *= 1.0 - power[idx];
    if (r == horizon) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t row = 0; row < nn; ++row) {
      const double* p_row = power.data() + row * nn;
      double* n_row = next.data() + row * nn;
      for (NodeId l = 0; l < n; ++l) {
        const double pl = p_row[static_cast<std::size_t>(l)];
        if (pl == 0.0) continue;
        auto nbrs = g.neighbors(l);
        auto wts = g.neighbor_weights(l);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
          n_row[static_cast<std::size_t>(nbrs[i])] += pl * wts[i];
      }
    }
    power.swap(next);
  }
  std::vector<double> score(nn);
  for (std::size_t row = 0; row < nn; ++row) {
    double acc = 0.0;
    for (std::size_t col = 0; col < nn; ++col) acc += 1.0 - residual[row * nn + col];
    score[row] = acc;
  }
  SeedSet out;
  out.origin = "pi(t=" + std::to_string(horizon) + ")";
  out.nodes = top_k_by_score(score, k);
  return out;
}

SeedSet select_by_label(const Graph& g, std::string_view label, int k,
                        const HeuristicParams& params) {
  if (label == "deg") return select_degree(g, k);
  if (label == "eig") return select_eigen(g, k, params.eig_weighted);
  if (label == "grd") return select_greedy(g, k, params.greedy_cfg);
  if (label == "dd") {
    const double p =
        params.dd_probability < 0.0 ? default_discount_probability(g) : params.dd_probability;
    return select_degree_discount(g, k, p);
  }
  if (label == "sigma") return select_sigma(g, k, params.sigma_pi_horizon);
  if (label == "pi") return select_pi(g, k, params.sigma_pi_horizon, params.pi_dense_cap);
  throw DataError("unknown heuristic label: " + std::string(label));
}

}  // namespace sobim
