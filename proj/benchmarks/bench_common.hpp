#pragma once

#include "sobim/diffusion.hpp"
#include "sobim/graph_gen.hpp"
#include "sobim/rng.hpp"

namespace sobim::bench {

inline Graph er_graph(NodeId n, double avg_degree, double w_lo, double w_hi,
                      std::uint64_t seed = 1) {
  GraphGenSpec spec;
  spec.kind = GraphKind::ER;
  spec.n = n;
  spec.avg_degree = avg_degree;
  spec.weight_lo = w_lo;
  spec.weight_hi = w_hi;
  spec.seed = seed;
  return generate_er(spec);
}

inline DiffusionConfig ic(int rounds, std::uint64_t seed = 1) {
  DiffusionConfig cfg;
  cfg.model = DiffusionModel::IC;
  cfg.rounds = rounds;
  cfg.master_seed = seed;
  return cfg;
}

}  // namespace sobim::bench
