#include "sobim/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "sobim/errors.hpp"
#include "sobim/rng.hpp"

namespace sobim {

Graph Graph::from_edges(NodeId n, std::vector<Edge> edges) {
  if (n < 0) throw DataError("node count must be non-negative");
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw DataError("edge endpoint outside [0, n)");
    if (e.u == e.v) throw DataError("self-loop on node " + std::to_string(e.u));
    if (!(e.weight >= 0.0 && e.weight <= 1.0))
      throw DataError("edge weight outside [0, 1]");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw DataError("duplicate edge " + std::to_string(edges[i].u) + "-" +
                      std::to_string(edges[i].v));
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[static_cast<std::size_t>(e.u) + 1];
    ++g.offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.adj_.resize(static_cast<std::size_t>(g.offsets_.back()));
  g.weights_.resize(g.adj_.size());
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so each per-node list comes out sorted.
  for (const auto& e : edges) {
    g.adj_[static_cast<std::size_t>(cursor[e.u])] = e.v;
    g.weights_[static_cast<std::size_t>(cursor[e.u]++)] = e.weight;
  }
  for (const auto& e : edges) {
    g.adj_[static_cast<std::size_t>(cursor[e.v])] = e.u;
    g.weights_[static_cast<std::size_t>(cursor[e.v]++)] = e.weight;
  }
  for (NodeId u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    if (!std::is_sorted(nb.begin(), nb.end())) {
      // Second pass (reverse directions) can interleave; sort jointly.
      std::vector<std::pair<NodeId, double>> tmp(nb.size());
      auto wt = g.neighbor_weights(u);
      for (std::size_t i = 0; i < nb.size(); ++i) tmp[i] = {nb[i], wt[i]};
      std::sort(tmp.begin(), tmp.end());
      for (std::size_t i = 0; i < nb.size(); ++i) {
        g.adj_[g.offsets_[u] + static_cast<std::int64_t>(i)] = tmp[i].first;
        g.weights_[g.offsets_[u] + static_cast<std::int64_t>(i)] = tmp[i].second;
      }
    }
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double Graph::weight(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v)
    throw DataError("no edge " + std::to_string(u) + "-" + std::to_string(v));
  return neighbor_weights(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (NodeId u = 0; u < n_; ++u) {
    auto nb = neighbors(u);
    auto wt = neighbor_weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] > u) out.push_back({u, nb[i], wt[i]});
    }
  }
  return out;
}

double Graph::mean_edge_weight() const {
  if (adj_.empty()) return 0.0;
  double sum = 0.0;
  for (NodeId u = 0; u < n_; ++u) {
    auto nb = neighbors(u);
    auto wt = neighbor_weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] > u) sum += wt[i];
    }
  }
  return sum / static_cast<double>(edge_count());
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<NodeId> stack = {0};
  seen[0] = 1;
  NodeId visited = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n_;
}

namespace {

bool parse_weight(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_nonneg_integer(const std::string& tok) {
  if (tok.empty() || tok.size() > 18) return false;
  return std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, double default_weight) {
  if (!(default_weight >= 0.0 && default_weight <= 1.0))
    throw DataError("default weight outside [0, 1]");

  struct RawEdge {
    std::string u, v;
    double w;
    int line;
  };
  std::vector<RawEdge> raw;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    std::string u, v, w, extra;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) throw DataError("line " + std::to_string(line_no) + ": expected \"u v [w]\"");
    double weight = default_weight;
    if (ls >> w) {
      if (!parse_weight(w, weight))
        throw DataError("line " + std::to_string(line_no) + ": bad weight \"" + w + "\"");
      if (!(weight >= 0.0 && weight <= 1.0))
        throw DataError("line " + std::to_string(line_no) + ": weight outside [0, 1]");
      if (ls >> extra)
        throw DataError("line " + std::to_string(line_no) + ": trailing tokens");
    }
    if (u == v) throw DataError("line " + std::to_string(line_no) + ": self-loop on \"" + u + "\"");
    raw.push_back({std::move(u), std::move(v), weight, line_no});
  }

  // Dense ids in sorted external-id order, numerically when possible, so a
  // dumped graph reloads to the identical Graph.
  std::vector<std::string> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const bool numeric = std::all_of(ids.begin(), ids.end(), is_nonneg_integer);
  if (numeric) {
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
  }
  std::unordered_map<std::string, NodeId> dense;
  dense.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) dense[ids[i]] = static_cast<NodeId>(i);

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) edges.push_back({dense[e.u], dense[e.v], e.w});
  // Duplicate detection with line attribution before handing to from_edges.
  {
    std::vector<std::pair<std::pair<NodeId, NodeId>, int>> keys;
    keys.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      NodeId a = std::min(edges[i].u, edges[i].v);
      NodeId b = std::max(edges[i].u, edges[i].v);
      keys.push_back({{a, b}, raw[i].line});
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 1; i < keys.size(); ++i) {
      if (keys[i].first == keys[i - 1].first)
        throw DataError("line " + std::to_string(keys[i].second) + ": duplicate edge");
    }
  }

  LoadedGraph out;
  out.graph = Graph::from_edges(static_cast<NodeId>(ids.size()), std::move(edges));
  out.external_ids = std::move(ids);
  return out;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  char buf[64];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%d %d %.6f\n", e.u, e.v, e.weight);
    out << buf;
  }
}

Graph randomize_weights(const Graph& g, double lo, double hi, std::uint64_t seed) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) throw DataError("weight range outside [0, 1]");
  auto edges = g.edges();
  SplitMix64 rng(derive_seed(seed, seed_tag::kWeights));
  for (auto& e : edges) e.weight = rng.uniform(lo, hi);
  return Graph::from_edges(g.node_count(), std::move(edges));
}

ComponentResult largest_connected_component(const Graph& g) {
  const NodeId n = g.node_count();
  if (n == 0) throw DataError("empty graph has no connected component");
  std::vector<NodeId> comp(static_cast<std::size_t>(n), -1);
  NodeId comp_count = 0;
  std::vector<NodeId> comp_size;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    NodeId size = 0;
    stack.push_back(s);
    comp[static_cast<std::size_t>(s)] = comp_count;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId v : g.neighbors(u)) {
        if (comp[static_cast<std::size_t>(v)] == -1) {
          comp[static_cast<std::size_t>(v)] = comp_count;
          stack.push_back(v);
        }
      }
    }
    comp_size.push_back(size);
    ++comp_count;
  }
  // Components are discovered in increasing order of their smallest node, so
  // the first maximal component wins size ties.
  NodeId best = 0;
  for (NodeId c = 1; c < comp_count; ++c) {
    if (comp_size[static_cast<std::size_t>(c)] > comp_size[static_cast<std::size_t>(best)]) best = c;
  }

  ComponentResult res;
  std::vector<NodeId> remap(static_cast<std::size_t>(n), -1);
  for (NodeId u = 0; u < n; ++u) {
    if (comp[static_cast<std::size_t>(u)] == best) {
      remap[static_cast<std::size_t>(u)] = static_cast<NodeId>(res.original_ids.size());
      res.original_ids.push_back(u);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (comp[static_cast<std::size_t>(e.u)] == best)
      edges.push_back({remap[static_cast<std::size_t>(e.u)], remap[static_cast<std::size_t>(e.v)], e.weight});
  }
  res.graph = Graph::from_edges(static_cast<NodeId>(res.original_ids.size()), std::move(edges));
  return res;
}

std::optional<int> bfs_distance(const Graph& g, NodeId u, NodeId v) {
  const NodeId n = g.node_count();
  if (u < 0 || u >= n || v < 0 || v >= n) throw DataError("bfs_distance: node id out of range");
  if (u == v) return 0;
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> frontier = {u};
  dist[static_cast<std::size_t>(u)] = 0;
  int d = 0;
  while (!frontier.empty()) {
    ++d;
    std::vector<NodeId> next;
    for (NodeId x : frontier) {
      for (NodeId y : g.neighbors(x)) {
        if (dist[static_cast<std::size_t>(y)] == -1) {
          if (y == v) return d;
          dist[static_cast<std::size_t>(y)] = d;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace sobim
