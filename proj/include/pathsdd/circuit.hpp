#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathsdd/graph.hpp"
#include "pathsdd/state.hpp"

namespace pathsdd {

using NodeRef = std::uint32_t;
/// Internal variable position; decision levels are 1..k, terminals sit at 0.
using Level = std::uint32_t;

inline constexpr NodeRef kFalse = 0;
inline constexpr NodeRef kTrue = 1;

struct Node {
  Level level = 0;
  NodeRef high = 0;  // taken when the tested variable is 1
  NodeRef low = 0;   // taken when it is 0

  friend bool operator==(const Node&, const Node&) = default;
};

/// Decision diagram ordered by levels: a node at level i tests original edge
/// variable `var_at(i)`, and its children sit at strictly lower levels. The
/// arena always starts with the two terminals, ⊥ at 0 and ⊤ at 1, and
/// children are allocated before parents.
class Circuit {
 public:
  Circuit() : Circuit(0) {}
  /// Empty circuit (root ⊥) over k variables with identity order.
  explicit Circuit(std::size_t k);
  /// Throws Error(Range) unless `var_of_level` is a bijection on 1..k.
  Circuit(std::size_t k, std::vector<EdgeLabel> var_of_level);

  /// Adopts a complete arena. Throws Error(Range) if the terminals are not
  /// at 0/1, a child does not precede its parent, or a level is out of range.
  static Circuit from_arena(std::size_t k, std::vector<EdgeLabel> var_of_level,
                            std::vector<Node> nodes, NodeRef root);

  NodeRef add_decision(Level level, NodeRef high, NodeRef low);
  void set_root(NodeRef root);
  void reserve(std::size_t n) { nodes_.reserve(n); }

  std::size_t k() const { return var_of_level_.size(); }
  NodeRef root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(NodeRef r) const { return nodes_[r]; }
  static bool is_terminal(NodeRef r) { return r <= kTrue; }

  /// Original edge label tested at `level` (1-based).
  EdgeLabel var_at(Level level) const { return var_of_level_[level - 1]; }
  EdgeLabel var_of(NodeRef r) const { return var_at(nodes_[r].level); }
  std::span<const EdgeLabel> var_of_level() const { return var_of_level_; }

  /// Node-for-node equality on (k, root, var/high/low of every node).
  bool same_nodes(const Circuit& other) const;

 private:
  std::vector<Node> nodes_;
  std::vector<EdgeLabel> var_of_level_;
  NodeRef root_ = kFalse;
};

/// Follows the diagram from the root; variables skipped by an edge are
/// unconstrained. Throws Error(Range) on a length mismatch.
bool evaluate(const Circuit& c, const State& y);
bool evaluate_from(const Circuit& c, NodeRef start, const State& y);

struct CircuitStats {
  std::size_t decision_count = 0;
  std::size_t terminal_count = 0;
  std::size_t wire_count = 0;
  std::size_t depth = 0;  // decision nodes on the longest root-terminal walk
};

/// Counts only nodes reachable from the root.
CircuitStats stats(const Circuit& c);

enum class StructureMode {
  Ordered,        // children at strictly smaller levels
  QuasiReduced,   // decision children exactly one level below, ⊤ only under level 1
};

struct StructureReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

StructureReport validate_structure(const Circuit& c,
                                   StructureMode mode = StructureMode::Ordered);

/// Text format:
///
///     pathsdd 1 <k> <node-count>
///     F 0
///     T 1
///     D <id> <var> <high-id> <low-id>
///     root <id>
///
/// `<var>` is the original edge label and node-count includes terminals.
void write_circuit(const Circuit& c, std::ostream& out);
std::string serialize_circuit(const Circuit& c);

/// Throws Error(Parse) on a bad header, dangling or forward references, or a
/// variable order that is not consistent along every walk.
Circuit parse_circuit(std::istream& in);
Circuit deserialize_circuit(std::string_view text);
Circuit read_circuit_file(const std::string& path);

/// Graphviz rendering: decision ellipses labelled Y<var>, solid high edges,
/// dashed low edges, box terminals.
std::string to_dot(const Circuit& c);

}  // namespace pathsdd
