#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pathsdd/circuit.hpp"
#include "pathsdd/graph.hpp"

namespace pathsdd {

/// One cell C_v^i of the compile table as produced by the recursive
/// templates. For decision nodes `high`/`low` refer to arena nodes of the
/// previous level (or terminals).
struct NodeSpec {
  enum class Kind { Decision, True, False };

  Kind kind = Kind::False;
  Level level = 0;
  NodeRef high = kFalse;
  NodeRef low = kFalse;

  static NodeSpec decision(Level level, NodeRef high, NodeRef low) {
    return {Kind::Decision, level, high, low};
  }
  static NodeSpec bottom() { return {}; }

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Untrimmed table of cells C_v^i, i in 1..k, together with the arena that
/// holds them. Levels are internal positions of the topological order; the
/// arena's variable order is the identity until leaves are renamed.
class CompileTable {
 public:
  CompileTable(std::size_t vertex_count, std::size_t k, VertexId source);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t k() const { return k_; }
  VertexId source() const { return source_; }

  NodeRef cell(VertexId v, Position i) const { return cells_[index(v, i)]; }
  void set_cell(VertexId v, Position i, NodeRef r) { cells_[index(v, i)] = r; }

  Circuit& circuit() { return circuit_; }
  void set_circuit(Circuit c) { circuit_ = std::move(c); }
  const Circuit& circuit() const { return circuit_; }

  /// Decision nodes in the arena (every cell ever built).
  std::size_t decision_count() const { return circuit_.size() - 2; }

 private:
  std::size_t index(VertexId v, Position i) const { return (i - 1) * vertex_count_ + v; }

  std::size_t vertex_count_;
  std::size_t k_;
  VertexId source_;
  std::vector<NodeRef> cells_;
  Circuit circuit_;
};

/// Applies the templates for cell (v, i). Cells of level i-1 must already be
/// in `table` when i > 1.
///   i = 1, e_1 = (s, v):      decision(1, ⊤, ⊥)
///   i = 1, v = s:             decision(1, ⊥, ⊤)
///   i = 1, otherwise:         ⊥
///   i > 1, v = s:             decision(i, ⊥, C_s^{i-1})
///   i > 1, e_i = (u, v):      decision(i, C_u^{i-1}, C_v^{i-1})
///   i > 1, otherwise:         decision(i, ⊥, C_v^{i-1})
NodeSpec template_node(VertexId v, Position i, const Dag& d, const EdgeOrdering& ord,
                       const CompileTable& table);

/// Level-parallel construction: every cell of level i depends only on level
/// i-1, so each level is one OpenMP loop over vertices.
CompileTable build_table(const Dag& d, const EdgeOrdering& ord);

namespace serial {
/// Reference construction calling template_node cell by cell. Produces an
/// arena identical to pathsdd::build_table.
CompileTable build_table(const Dag& d, const EdgeOrdering& ord);
}  // namespace serial

/// Replaces every cell C_v^i with i < sigma_m(v) by ⊥ (all cells of a
/// non-source vertex without incoming edges) and drops nodes unreachable from
/// the root C_t^k. The result keeps quasi-reduced levels.
Circuit trim(const CompileTable& table, const VertexSpans& spans, VertexId target);

/// The untrimmed circuit rooted at C_t^k.
Circuit untrimmed_circuit(const CompileTable& table, VertexId target);

/// Rewrites leaf variables: the node at internal position i now tests
/// `relabel[i-1]` applied to its current label. Throws Error(Range) unless
/// relabel is a bijection on 1..k.
Circuit rename_leaves(const Circuit& c, std::span<const EdgeLabel> relabel);

/// Merges isomorphic nodes and removes tests whose children coincide. The
/// result may skip levels.
Circuit reduce(const Circuit& c);

struct CompileOptions {
  bool merge_endpoints = false;
  bool trim = true;
  bool reduce = false;
  bool parallel = true;
};

struct Compilation {
  Circuit circuit;
  EdgeOrdering ordering;          // of the (possibly merged) graph
  std::size_t vertex_count = 0;   // |V| of the compiled graph
  std::size_t untrimmed_decisions = 0;
};

/// validate → (merge) → order → build → trim → rename → (reduce).
/// Throws Error(Degenerate) when s = t, Error(Cycle) on a cycle.
Compilation compile_detailed(const Dag& d, const CompileOptions& options = {});
Circuit compile(const Dag& d, const CompileOptions& options = {});

}  // namespace pathsdd
