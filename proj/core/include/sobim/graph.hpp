#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sobim {

using NodeId = std::int32_t;

/// One undirected edge with its activation probability.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;
};

/// Undirected graph with per-edge activation probabilities in [0, 1].
///
/// Node ids are dense in [0, n). Adjacency is stored CSR-style with both
/// directions present and neighbor lists sorted ascending; the single weight
/// of an undirected edge governs activation in either direction. Instances
/// are immutable after construction and safe for concurrent reads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from a list of undirected edges.
  /// Rejects self loops, duplicate edges (in either orientation), ids outside
  /// [0, n), and weights outside [0, 1].
  static Graph from_edges(NodeId n, std::vector<Edge> edges);

  NodeId node_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(adj_.size()) / 2; }

  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(offsets_[static_cast<std::size_t>(u) + 1] - offsets_[u]);
  }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u],
            static_cast<std::size_t>(offsets_[static_cast<std::size_t>(u) + 1] - offsets_[u])};
  }
  /// Weights parallel to neighbors(u).
  std::span<const double> neighbor_weights(NodeId u) const {
    return {weights_.data() + offsets_[u],
            static_cast<std::size_t>(offsets_[static_cast<std::size_t>(u) + 1] - offsets_[u])};
  }

  bool has_edge(NodeId u, NodeId v) const;
  /// Weight of edge (u, v); throws DataError when the edge is absent.
  double weight(NodeId u, NodeId v) const;

  /// Unique undirected edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;

  double mean_edge_weight() const;
  bool is_connected() const;

 private:
  NodeId n_ = 0;
  std::vector<std::int64_t> offsets_;  // size n + 1
  std::vector<NodeId> adj_;
  std::vector<double> weights_;
};

/// Result of parsing an external edge list: the dense-id graph plus the
/// mapping dense id -> external label.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> external_ids;
};

/// Parses whitespace-separated "u v [w]" lines. '#' starts a comment, blank
/// lines are skipped, and a missing w falls back to default_weight. External
/// ids may be arbitrary tokens; they are remapped to dense ids in sorted
/// order (numeric when every id parses as a non-negative integer,
/// lexicographic otherwise), so reloading a dump reproduces the same graph.
/// Throws DataError (with the offending line number) on malformed lines,
/// self loops, duplicate edges, or weights outside [0, 1].
LoadedGraph load_edge_list(std::istream& in, double default_weight);

/// Writes "u v w" lines sorted by (u, v) with 6-decimal weights.
void write_edge_list(std::ostream& out, const Graph& g);

/// Returns a fresh copy of g whose edge weights are redrawn i.i.d. uniform
/// from [lo, hi], in sorted edge order, from a stream derived from seed.
Graph randomize_weights(const Graph& g, double lo, double hi, std::uint64_t seed);

struct ComponentResult {
  Graph graph;
  std::vector<NodeId> original_ids;  // new id -> id in the input graph
};

/// Induced subgraph on the largest connected component, ids re-densified in
/// increasing original-id order. Size ties go to the component containing
/// the smallest original id. Throws DataError on an empty graph.
ComponentResult largest_connected_component(const Graph& g);

/// Unweighted shortest-path hop count, std::nullopt when unreachable.
std::optional<int> bfs_distance(const Graph& g, NodeId u, NodeId v);

}  // namespace sobim
