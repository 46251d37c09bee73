#include "pathsdd/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pathsdd/error.hpp"

namespace pathsdd {

namespace {

std::string grid_name(unsigned r, unsigned c) {
  return "v" + std::to_string(r) + "_" + std::to_string(c);
}

// Uniform integer in [lo, hi] independent of the standard library's
// distribution implementation, so seeds reproduce across toolchains.
std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace

Dag gen_grid(unsigned m, unsigned n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::Range, "grid dimensions must be >= 1");
  Dag d(grid_name(0, 0), grid_name(m, n));
  for (unsigned r = 0; r <= m; ++r) {
    for (unsigned c = 0; c <= n; ++c) {
      if (c < n) d.add_edge(grid_name(r, c), grid_name(r, c + 1));
      if (r < m) d.add_edge(grid_name(r, c), grid_name(r + 1, c));
    }
  }
  return d;
}

Dag shuffle_edges(const Dag& d, std::uint64_t seed) {
  std::vector<EdgeLabel> order(d.edge_count());
  std::iota(order.begin(), order.end(), EdgeLabel{1});
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform(rng, 0, i - 1)]);
  }
  Dag out(d.name(d.source()), d.name(d.target()));
  for (EdgeLabel label : order) {
    const auto& e = d.edge(label);
    out.add_edge(d.name(e.tail), d.name(e.head));
  }
  return out;
}

Dag random_dag(std::uint64_t seed, const RandomDagParams& params) {
  std::mt19937_64 rng(seed);
  const std::size_t inner = uniform(rng, params.min_inner, params.max_inner);
  const std::size_t k = uniform(rng, params.min_edges, params.max_edges);

  // rank 0 = s, ranks 1..inner = v1..vN, rank inner+1 = t
  auto name = [&](std::size_t rank) -> std::string {
    if (rank == 0) return "s";
    if (rank == inner + 1) return "t";
    return "v" + std::to_string(rank);
  };

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  // One guaranteed s->t chain through a random subset of inner vertices.
  std::size_t prev = 0;
  for (std::size_t r = 1; r <= inner && edges.size() + 1 < k; ++r) {
    if (rng() % 2 == 0) {
      edges.emplace_back(prev, r);
      prev = r;
    }
  }
  edges.emplace_back(prev, inner + 1);
  while (edges.size() < k) {
    std::size_t a = uniform(rng, 0, inner + 1);
    std::size_t b = uniform(rng, 0, inner + 1);
    if (a == b) continue;
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  if (params.shuffle) {
    for (std::size_t i = edges.size(); i > 1; --i) {
      std::swap(edges[i - 1], edges[uniform(rng, 0, i - 1)]);
    }
  }

  Dag d(name(0), name(inner + 1));
  for (std::size_t r = 1; r <= inner; ++r) d.add_vertex(name(r));
  for (auto [a, b] : edges) d.add_edge(name(a), name(b));
  return d;
}

}  // namespace pathsdd
