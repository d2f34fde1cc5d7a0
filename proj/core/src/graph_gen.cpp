#include "sobim/graph_gen.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sobim/errors.hpp"
#include "sobim/rng.hpp"

namespace sobim {

void GraphGenSpec::validate() const {
  if (n < 2) throw DataError("graph generation requires n >= 2");
  if (!(weight_lo >= 0.0 && weight_lo <= weight_hi && weight_hi <= 1.0))
    throw DataError("weight range must satisfy 0 <= lo <= hi <= 1");
  if (kind == GraphKind::ER) {
    if (!(avg_degree >= 0.0 && avg_degree <= static_cast<double>(n - 1)))
      throw DataError("average degree must lie in [0, n-1]");
  } else {
    if (ring_degree <= 0 || ring_degree % 2 != 0)
      throw DataError("ring degree must be positive and even");
    if (ring_degree >= n) throw DataError("ring degree must be < n");
    if (!(rewire_prob >= 0.0 && rewire_prob <= 1.0))
      throw DataError("rewire probability outside [0, 1]");
    if (max_ws_attempts < 1) throw DataError("max_ws_attempts must be >= 1");
  }
}

namespace {

// Weights are drawn in sorted-edge order from a dedicated stream, so the
// structure and weight draws never interleave.
void assign_weights(std::vector<Edge>& edges, const GraphGenSpec& spec) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  SplitMix64 rng(derive_seed(spec.seed, seed_tag::kWeights));
  for (auto& e : edges) e.weight = rng.uniform(spec.weight_lo, spec.weight_hi);
}

}  // namespace

Graph generate_er(const GraphGenSpec& spec) {
  spec.validate();
  if (spec.kind != GraphKind::ER) throw DataError("generate_er called with non-ER spec");
  const double p = spec.avg_degree / static_cast<double>(spec.n - 1);
  SplitMix64 rng(derive_seed(spec.seed, seed_tag::kErStructure));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(0.55 * spec.avg_degree * spec.n));
  for (NodeId u = 0; u < spec.n; ++u) {
    for (NodeId v = u + 1; v < spec.n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v, 0.0});
    }
  }
  assign_weights(edges, spec);
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph generate_ws(const GraphGenSpec& spec) {
  spec.validate();
  if (spec.kind != GraphKind::WS) throw DataError("generate_ws called with non-WS spec");
  const NodeId n = spec.n;
  const int half = spec.ring_degree / 2;

  for (int attempt = 0; attempt < spec.max_ws_attempts; ++attempt) {
    SplitMix64 rng(derive_seed(spec.seed, seed_tag::kWsStructure + static_cast<std::uint64_t>(attempt)));
    std::set<std::pair<NodeId, NodeId>> edge_set;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    auto key = [](NodeId a, NodeId b) { return std::pair(std::min(a, b), std::max(a, b)); };
    auto insert = [&](NodeId a, NodeId b) {
      edge_set.insert(key(a, b));
      ++deg[static_cast<std::size_t>(a)];
      ++deg[static_cast<std::size_t>(b)];
    };
    auto erase = [&](NodeId a, NodeId b) {
      edge_set.erase(key(a, b));
      --deg[static_cast<std::size_t>(a)];
      --deg[static_cast<std::size_t>(b)];
    };
    for (NodeId u = 0; u < n; ++u) {
      for (int j = 1; j <= half; ++j) insert(u, static_cast<NodeId>((u + j) % n));
    }
    // Rewire each ring edge (u, u+j) with probability rewire_prob to a
    // uniformly chosen new endpoint, skipping self loops and existing edges.
    for (int j = 1; j <= half; ++j) {
      for (NodeId u = 0; u < n; ++u) {
        if (!rng.bernoulli(spec.rewire_prob)) continue;
        const NodeId v = static_cast<NodeId>((u + j) % n);
        if (!edge_set.count(key(u, v))) continue;       // already rewired away
        if (deg[static_cast<std::size_t>(u)] >= n - 1) continue;  // saturated node
        NodeId w;
        do {
          w = static_cast<NodeId>(rng.next_below(static_cast<std::uint64_t>(n)));
        } while (w == u || edge_set.count(key(u, w)));
        erase(u, v);
        insert(u, w);
      }
    }
    std::vector<Edge> edges;
    edges.reserve(edge_set.size());
    for (const auto& [a, b] : edge_set) edges.push_back({a, b, 0.0});
    assign_weights(edges, spec);
    Graph g = Graph::from_edges(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw DegeneracyError("no connected Watts-Strogatz graph within " +
                        std::to_string(spec.max_ws_attempts) + " attempts");
}

Graph generate(const GraphGenSpec& spec) {
  return spec.kind == GraphKind::ER ? generate_er(spec) : generate_ws(spec);
}

}  // namespace sobim
