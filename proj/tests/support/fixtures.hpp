#pragma once

#include <cstdint>
#include <vector>

#include "sobim/graph.hpp"
#include "sobim/sobol.hpp"

namespace sobim::testing {

Graph path_graph(int n, double w);
Graph star_graph(int leaves, double w);  // hub is node 0
Graph cycle_graph(int n, double w);
Graph clique_graph(int n, double w);
/// Two disjoint cliques of the given sizes; the first occupies ids 0..a-1.
Graph two_cliques(int a, int b, double w);

/// Two equal cliques joined by a chain of `chain_edges` edges, uniform
/// weight w. Layout: clique A on 0..c-1 with junction 0, chain nodes
/// c..c+chain_edges-2, clique B starting at its junction c+chain_edges-1.
Graph barbell_graph(int clique_n, int chain_edges, double w);

/// Synthetic inclusion table over candidates 0..m-1 with the given cell
/// means (index = mask bits) and zero std.
SubsetSpreadTable table_from_values(const std::vector<double>& cells);

/// Table of a linear function sum_i weights[i] * bit_i (cell(0) = 0).
SubsetSpreadTable additive_table(const std::vector<double>& weights);

/// 2-candidate AND table: only the full pattern spreads (value 1).
SubsetSpreadTable and_table();

/// Random table with cell(0) = 0 and the other cells uniform in [0, scale).
SubsetSpreadTable random_table(int width, std::uint64_t seed, double scale = 10.0);

struct ReachStats {
  double expected_reach = 0.0;  // E[#nodes connected to a seed via live edges]
  double target_prob = 0.0;     // P(target is connected to a seed)
};

/// Live-edge enumeration over all 2^|E| subsets (|E| <= 20); seeds may be
/// empty (both stats 0).
ReachStats exact_reach_stats(const Graph& g, const std::vector<NodeId>& seeds, NodeId target);

/// Exact expected IC spread on a barbell_graph(clique_n, chain_edges, w),
/// for seeds given as local clique positions (0 = the junction). Computed by
/// per-clique live-edge enumeration and independence across the chain, so it
/// stays exact where whole-graph enumeration is intractable.
double barbell_exact_spread(int clique_n, int chain_edges, double w,
                            const std::vector<int>& seeds_a, const std::vector<int>& seeds_b);

}  // namespace sobim::testing
