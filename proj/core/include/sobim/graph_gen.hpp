#pragma once

#include <cstdint>

#include "sobim/graph.hpp"

namespace sobim {

enum class GraphKind { ER, WS };

/// Parameters for synthetic graph generation. Generation is a pure function
/// of the spec: the same spec yields a byte-identical graph.
struct GraphGenSpec {
  GraphKind kind = GraphKind::ER;
  NodeId n = 0;
  double avg_degree = 0.0;  // ER: target average degree, p = avg_degree / (n - 1)
  int ring_degree = 0;      // WS: even ring lattice degree
  double rewire_prob = 0.0; // WS
  double weight_lo = 0.0;
  double weight_hi = 1.0;
  std::uint64_t seed = 0;
  int max_ws_attempts = 100;  // WS regeneration budget until connected

  void validate() const;  // throws DataError on violated invariants
};

/// Erdős–Rényi G(n, p) with p = avg_degree / (n - 1); edge weights i.i.d.
/// uniform on [weight_lo, weight_hi].
Graph generate_er(const GraphGenSpec& spec);

/// Watts–Strogatz small world: ring lattice plus per-edge rewiring, then
/// regenerated with derived sub-seeds until connected (bounded attempts).
/// Edge count is always n * ring_degree / 2. Throws DegeneracyError when the
/// attempt budget is exhausted.
Graph generate_ws(const GraphGenSpec& spec);

/// Dispatch on spec.kind.
Graph generate(const GraphGenSpec& spec);

}  // namespace sobim
