#include "fixtures.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "sobim/rng.hpp"

namespace sobim::testing {

Graph path_graph(int n, double w) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return Graph::from_edges(n, std::move(edges));
}

Graph star_graph(int leaves, double w) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, w});
  return Graph::from_edges(leaves + 1, std::move(edges));
}

Graph cycle_graph(int n, double w) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
  return Graph::from_edges(n, std::move(edges));
}

Graph clique_graph(int n, double w) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  return Graph::from_edges(n, std::move(edges));
}

Graph two_cliques(int a, int b, double w) {
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) edges.push_back({i, j, w});
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j) edges.push_back({a + i, a + j, w});
  return Graph::from_edges(a + b, std::move(edges));
}

Graph barbell_graph(int clique_n, int chain_edges, double w) {
  const int c = clique_n;
  const int jb = c + chain_edges - 1;  // junction of clique B
  std::vector<Edge> edges;
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) edges.push_back({i, j, w});
  for (int i = 0; i < chain_edges; ++i) {
    const int from = i == 0 ? 0 : c + i - 1;
    edges.push_back({from, c + i, w});
  }
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j) edges.push_back({jb + i, jb + j, w});
  return Graph::from_edges(jb + c, std::move(edges));
}

SubsetSpreadTable table_from_values(const std::vector<double>& cells) {
  const auto n = cells.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("cell count must be 2^m");
  SubsetSpreadTable t;
  const int m = std::countr_zero(n);
  for (int i = 0; i < m; ++i) t.candidates.push_back(i);
  t.cells.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.cells[i] = SpreadEstimate{cells[i], 0.0, 1};
  t.validate();
  return t;
}

SubsetSpreadTable additive_table(const std::vector<double>& weights) {
  const int m = static_cast<int>(weights.size());
  std::vector<double> cells(std::size_t{1} << m, 0.0);
  for (std::size_t mask = 0; mask < cells.size(); ++mask) {
    double y = 0.0;
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) y += weights[static_cast<std::size_t>(i)];
    }
    cells[mask] = y;
  }
  return table_from_values(cells);
}

SubsetSpreadTable and_table() { return table_from_values({0.0, 0.0, 0.0, 1.0}); }

SubsetSpreadTable random_table(int width, std::uint64_t seed, double scale) {
  SplitMix64 rng(mix64(seed));
  std::vector<double> cells(std::size_t{1} << width, 0.0);
  for (std::size_t i = 1; i < cells.size(); ++i) cells[i] = rng.next_double() * scale;
  return table_from_values(cells);
}

ReachStats exact_reach_stats(const Graph& g, const std::vector<NodeId>& seeds, NodeId target) {
  ReachStats out;
  if (seeds.empty()) return out;
  const auto edges = g.edges();
  const std::size_t e = edges.size();
  if (e > 20) throw std::invalid_argument("exact_reach_stats requires <= 20 edges");
  const auto n = static_cast<std::size_t>(g.node_count());

  std::vector<int> parent(n);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  for (std::uint32_t live = 0; live < (1u << e); ++live) {
    double prob = 1.0;
    for (std::size_t i = 0; i < e; ++i)
      prob *= (live >> i & 1u) ? edges[i].weight : 1.0 - edges[i].weight;
    if (prob == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < e; ++i) {
      if (live >> i & 1u) {
        int ra = find(edges[i].u), rb = find(edges[i].v);
        if (ra != rb) parent[static_cast<std::size_t>(rb)] = ra;
      }
    }
    std::vector<char> seed_root(n, 0);
    for (NodeId s : seeds) seed_root[static_cast<std::size_t>(find(s))] = 1;
    int reached = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (seed_root[static_cast<std::size_t>(find(static_cast<int>(i)))]) ++reached;
    out.expected_reach += prob * reached;
    if (seed_root[static_cast<std::size_t>(find(target))]) out.target_prob += prob;
  }
  return out;
}

double barbell_exact_spread(int clique_n, int chain_edges, double w,
                            const std::vector<int>& seeds_a, const std::vector<int>& seeds_b) {
  const Graph blob = clique_graph(clique_n, w);
  const NodeId junction = 0;

  auto to_nodes = [](const std::vector<int>& xs) {
    return std::vector<NodeId>(xs.begin(), xs.end());
  };
  auto with_junction = [&](const std::vector<int>& xs) {
    std::vector<NodeId> nodes(xs.begin(), xs.end());
    for (NodeId v : nodes)
      if (v == junction) return nodes;
    nodes.push_back(junction);
    return nodes;
  };

  // Per-clique statistics; a clique's randomness is independent of the chain
  // and of the other clique, which is what makes the composition exact.
  const ReachStats a_alone = exact_reach_stats(blob, to_nodes(seeds_a), junction);
  const ReachStats b_alone = exact_reach_stats(blob, to_nodes(seeds_b), junction);
  const ReachStats a_entered = exact_reach_stats(blob, with_junction(seeds_a), junction);
  const ReachStats b_entered = exact_reach_stats(blob, with_junction(seeds_b), junction);

  const double chain_through = std::pow(w, chain_edges);
  const double deliver_to_a = b_alone.target_prob * chain_through;
  const double deliver_to_b = a_alone.target_prob * chain_through;

  double total = deliver_to_a * a_entered.expected_reach +
                 (1.0 - deliver_to_a) * a_alone.expected_reach;
  total += deliver_to_b * b_entered.expected_reach +
           (1.0 - deliver_to_b) * b_alone.expected_reach;

  // Chain nodes: reachable from the A side via the first i chain edges, or
  // from the B side via the remaining ones; the two routes share no
  // randomness.
  for (int i = 1; i <= chain_edges - 1; ++i) {
    const double from_a = a_alone.target_prob * std::pow(w, i);
    const double from_b = b_alone.target_prob * std::pow(w, chain_edges - i);
    total += 1.0 - (1.0 - from_a) * (1.0 - from_b);
  }
  return total;
}

}  // namespace sobim::testing
