#pragma once

#include <cstdint>
#include <string>

#include "pathsdd/graph.hpp"

namespace pathsdd {

/// Directed (m+1) x (n+1) lattice with right and down edges, source at the
/// top-left corner, target at the bottom-right, edges in row-major order
/// (right edge before down edge at each vertex). Vertex names are "v<r>_<c>".
/// Throws Error(Range) unless m, n >= 1.
Dag gen_grid(unsigned m, unsigned n);

/// Same vertices and edges, file order permuted by a seeded shuffle.
Dag shuffle_edges(const Dag& d, std::uint64_t seed);

struct RandomDagParams {
  std::size_t min_edges = 4;
  std::size_t max_edges = 16;
  std::size_t min_inner = 1;   // vertices besides s and t
  std::size_t max_inner = 6;
  bool shuffle = true;         // randomize file order
};

/// Random acyclic multigraph: vertices are ranked s < v1 < ... < t and every
/// edge goes from lower to higher rank. Deterministic in `seed`.
Dag random_dag(std::uint64_t seed, const RandomDagParams& params = {});

}  // namespace pathsdd
