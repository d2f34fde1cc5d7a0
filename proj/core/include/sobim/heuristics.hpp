#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sobim/diffusion.hpp"
#include "sobim/graph.hpp"

namespace sobim {

/// A seed selection: node ids in selection order, plus a label describing
/// the producing algorithm and its parameters.
struct SeedSet {
  std::vector<NodeId> nodes;
  std::string origin;
};

/// Degree heuristic with removal (SingleDiscount): repeatedly pick the
/// max-degree node, then delete it from the working graph before the next
/// pick. Ties go to the smallest id.
SeedSet select_degree(const Graph& g, int k);

/// Top-k nodes by eigenvector centrality of the (by default unweighted)
/// adjacency. Power iteration on A + I, which has the same dominant
/// eigenvector as A but converges on bipartite graphs too; stops when the
/// L-inf change of the normalized vector drops below tol.
/// Throws DegeneracyError when max_iter is exhausted.
SeedSet select_eigen(const Graph& g, int k, bool weighted = false, double tol = 1e-10,
                     int max_iter = 10000);

/// Simulation-based greedy: each iteration adds the node with the largest
/// estimated marginal spread, every term averaged over cfg.rounds cascades
/// on its own content-derived seed stream.
SeedSet select_greedy(const Graph& g, int k, const DiffusionConfig& cfg);

/// Degree discount: a node's score starts at its degree and becomes
/// d - 2t - (d - t) * t * p once t of its neighbors are seeded.
SeedSet select_degree_discount(const Graph& g, int k, double p);

/// Default discount probability: the graph's mean edge weight.
double default_discount_probability(const Graph& g);

/// Truncated weighted-walk score: s = sum over tau in [1, horizon] of
/// A^tau * 1, accumulated iteratively as v <- A * (v + 1). Top-k scores.
SeedSet select_sigma(const Graph& g, int k, int horizon);

/// Dense coverage score: M = J - elementwise-prod over r in [1, horizon] of
/// (J - A^r); score is the row sum of M. Materializes n x n matrices, so n
/// must not exceed dense_cap.
SeedSet select_pi(const Graph& g, int k, int horizon, NodeId dense_cap = 20000);

/// Parameters for label-based dispatch.
struct HeuristicParams {
  int sigma_pi_horizon = 3;
  double dd_probability = -1.0;  // < 0: use the graph's mean edge weight
  bool eig_weighted = false;
  NodeId pi_dense_cap = 20000;
  DiffusionConfig greedy_cfg{DiffusionModel::IC, 0.01, 0.20, 1000, 0, 0};
};

/// Known labels: deg, eig, grd, dd, sigma, pi. Throws DataError otherwise.
SeedSet select_by_label(const Graph& g, std::string_view label, int k,
                        const HeuristicParams& params);

}  // namespace sobim
