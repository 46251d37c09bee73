#pragma once

#include <cstdint>
#include <vector>

#include "pathsdd/circuit.hpp"

namespace pathsdd::detail {

// Below this many decision nodes the per-level barriers cost more than the
// work they split.
inline constexpr std::size_t kParallelMinNodes = 4096;

/// Decision nodes grouped by level, ascending. Nodes within one level never
/// reference each other, so each group is an independent parallel loop.
struct LevelSchedule {
  std::vector<std::size_t> starts;  // group L is [starts[L], starts[L+1])
  std::vector<NodeRef> nodes;

  explicit LevelSchedule(const Circuit& c) : starts(c.k() + 2, 0) {
    for (NodeRef r = 2; r < c.size(); ++r) ++starts[c.node(r).level + 1];
    for (std::size_t L = 1; L < starts.size(); ++L) starts[L] += starts[L - 1];
    nodes.resize(c.size() - 2);
    std::vector<std::size_t> fill(starts.begin(), starts.end() - 1);
    for (NodeRef r = 2; r < c.size(); ++r) nodes[fill[c.node(r).level]++] = r;
  }

  std::size_t begin(Level L) const { return starts[L]; }
  std::size_t end(Level L) const { return starts[L + 1]; }
};

/// Best completion table for MPE and ranked enumeration. `score[r]` is the
/// best weight below node r minus the best weight of its free variables
/// (so gaps need no correction); `take_high[r]` is the tie-broken choice.
struct MpeTable {
  std::vector<double> score;
  std::vector<std::uint8_t> take_high;

  bool satisfiable(NodeRef r) const;
};

MpeTable solve_mpe(const Circuit& c, const Logits& a);

/// Packed state, bit (label-1). Compared in label order, 0 before 1.
using Bits = std::vector<std::uint64_t>;

inline void set_bit(Bits& b, EdgeLabel label, bool v) {
  const std::size_t i = label - 1;
  const std::uint64_t m = std::uint64_t{1} << (i % 64);
  if (v) {
    b[i / 64] |= m;
  } else {
    b[i / 64] &= ~m;
  }
}

/// True when `x` precedes `y` in big-endian order (first differing label is
/// 0 in x).
inline bool key_less(const Bits& x, const Bits& y) {
  for (std::size_t w = 0; w < x.size(); ++w) {
    if (x[w] != y[w]) {
      const std::uint64_t diff = x[w] ^ y[w];
      const std::uint64_t lowest = diff & (~diff + 1);
      return (x[w] & lowest) == 0;
    }
  }
  return false;
}

/// Writes the best completion from position (n, from_level): free variables
/// at levels in (n.level, from_level] follow the sign of their logit, then
/// the table's choices down to ⊤. Every level <= from_level is written.
void write_completion(const Circuit& c, const MpeTable& t, const Logits& a, NodeRef n,
                      Level from_level, Bits& out);

State to_state(const Bits& b, std::size_t k);
double canonical_weight(const Bits& b, const Logits& a);

}  // namespace pathsdd::detail
