#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pathsdd/graph.hpp"
#include "pathsdd/state.hpp"

/// Brute-force references. Nothing here touches edge orderings or circuits.
namespace pathsdd::oracle {

inline constexpr std::size_t kMaxPathEdges = 24;
inline constexpr std::size_t kMaxDistributionEdges = 20;

struct PathSet {
  std::vector<State> states;  // sorted ascending
  bool contains(const State& y) const;
  std::size_t size() const { return states.size(); }
};

/// True iff the selected edges form exactly one simple path from the
/// declared source to the declared target.
bool is_path_state(const Dag& d, const State& y);

/// DFS over all simple s->t paths. Throws Error(Range) when k > 24.
PathSet brute_paths(const Dag& d);

/// Paths from any source vertex to any sink vertex of the graph.
PathSet brute_source_sink_paths(const Dag& d);

struct DistributionRow {
  State state;
  double prob = 0.0;
  bool satisfies = false;
  double cond_prob = 0.0;
};

struct Distribution {
  std::vector<DistributionRow> rows;  // 2^k rows, states ascending
  double constraint_prob = 0.0;       // P(κ | a)
  double total_prob = 0.0;            // Σ P(y | a), should be 1
};

/// Exhaustive table over all 2^k states. Throws Error(Range) when k > 20.
Distribution brute_distribution(const Dag& d, const Logits& a);

struct BestPath {
  State state;
  double log_weight = 0.0;
};

/// Max-weight s->t path by relaxation over a DFS-derived vertex order.
/// Equal weights resolve to the smaller state in big-endian order. Throws
/// Error(UnsatCondition) when no path exists.
BestPath dag_best_path(const Dag& d, const Logits& a);

struct RankedPath {
  State state;
  double log_weight = 0.0;
};

/// All s->t paths sorted by (weight desc, state asc).
std::vector<RankedPath> ranked_paths(const Dag& d, const Logits& a);

boost::multiprecision::cpp_int binomial(unsigned n, unsigned r);

}  // namespace pathsdd::oracle
