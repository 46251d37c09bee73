#include "pathsdd/circuit.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pathsdd/error.hpp"

namespace pathsdd {

namespace {

std::vector<EdgeLabel> identity_order(std::size_t k) {
  std::vector<EdgeLabel> v(k);
  std::iota(v.begin(), v.end(), EdgeLabel{1});
  return v;
}

void check_bijection(std::span<const EdgeLabel> labels) {
  std::vector<bool> seen(labels.size(), false);
  for (EdgeLabel l : labels) {
    if (l == 0 || l > labels.size() || seen[l - 1]) {
      throw Error(ErrorCode::Range, "variable order is not a permutation of 1..k");
    }
    seen[l - 1] = true;
  }
}

}  // namespace

Circuit::Circuit(std::size_t k) : Circuit(k, identity_order(k)) {}

Circuit::Circuit(std::size_t k, std::vector<EdgeLabel> var_of_level)
    : var_of_level_(std::move(var_of_level)) {
  if (var_of_level_.size() != k) throw Error(ErrorCode::Range, "variable order has wrong length");
  check_bijection(var_of_level_);
  nodes_.push_back({0, kFalse, kFalse});
  nodes_.push_back({0, kTrue, kTrue});
}

Circuit Circuit::from_arena(std::size_t k, std::vector<EdgeLabel> var_of_level,
                            std::vector<Node> nodes, NodeRef root) {
  Circuit c(k, std::move(var_of_level));
  if (nodes.size() < 2 || nodes[kFalse] != c.nodes_[kFalse] || nodes[kTrue] != c.nodes_[kTrue]) {
    throw Error(ErrorCode::Range, "arena must start with the ⊥ and ⊤ terminals");
  }
  for (std::size_t i = 2; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.level == 0 || n.level > k) {
      throw Error(ErrorCode::Range, "node " + std::to_string(i) + " has level out of range");
    }
    if (n.high >= i || n.low >= i) {
      throw Error(ErrorCode::Range, "node " + std::to_string(i) + " references a later node");
    }
  }
  if (root >= nodes.size()) throw Error(ErrorCode::Range, "root out of range");
  c.nodes_ = std::move(nodes);
  c.root_ = root;
  return c;
}

NodeRef Circuit::add_decision(Level level, NodeRef high, NodeRef low) {
  if (level == 0 || level > k()) throw Error(ErrorCode::Range, "decision level out of range");
  if (high >= nodes_.size() || low >= nodes_.size()) {
    throw Error(ErrorCode::Range, "child reference does not exist yet");
  }
  nodes_.push_back({level, high, low});
  return static_cast<NodeRef>(nodes_.size() - 1);
}

void Circuit::set_root(NodeRef root) {
  if (root >= nodes_.size()) throw Error(ErrorCode::Range, "root out of range");
  root_ = root;
}

bool Circuit::same_nodes(const Circuit& other) const {
  if (k() != other.k() || root_ != other.root_ || nodes_.size() != other.nodes_.size()) {
    return false;
  }
  for (NodeRef r = 2; r < nodes_.size(); ++r) {
    const auto& a = nodes_[r];
    const auto& b = other.nodes_[r];
    if (a.high != b.high || a.low != b.low || var_of(r) != other.var_of(r)) return false;
  }
  return true;
}

bool evaluate_from(const Circuit& c, NodeRef start, const State& y) {
  if (y.size() != c.k()) {
    throw Error(ErrorCode::Range, "state has " + std::to_string(y.size()) +
                                      " variables, circuit has " + std::to_string(c.k()));
  }
  NodeRef r = start;
  while (!Circuit::is_terminal(r)) {
    const auto& n = c.node(r);
    r = y.get_label(c.var_at(n.level)) ? n.high : n.low;
  }
  return r == kTrue;
}

bool evaluate(const Circuit& c, const State& y) { return evaluate_from(c, c.root(), y); }

CircuitStats stats(const Circuit& c) {
  CircuitStats s;
  s.terminal_count = 2;
  std::vector<bool> reach(c.size(), false);
  std::vector<std::size_t> depth(c.size(), 0);
  reach[c.root()] = true;
  for (std::size_t i = c.size(); i-- > 2;) {
    if (!reach[i]) continue;
    ++s.decision_count;
    const auto& n = c.node(static_cast<NodeRef>(i));
    reach[n.high] = reach[n.low] = true;
  }
  // Children precede parents, so one forward pass gives longest walks.
  for (std::size_t i = 2; i < c.size(); ++i) {
    if (!reach[i]) continue;
    const auto& n = c.node(static_cast<NodeRef>(i));
    depth[i] = 1 + std::max(depth[n.high], depth[n.low]);
  }
  s.wire_count = 2 * s.decision_count;
  s.depth = depth[c.root()];
  return s;
}

StructureReport validate_structure(const Circuit& c, StructureMode mode) {
  StructureReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  const auto nodes = c.nodes();
  if (nodes.size() < 2 || nodes[kFalse] != Node{0, kFalse, kFalse} ||
      nodes[kTrue] != Node{0, kTrue, kTrue}) {
    fail("terminals must be ⊥ at 0 and ⊤ at 1");
    return report;
  }
  if (c.root() >= nodes.size()) fail("root out of range");

  for (NodeRef r = 2; r < nodes.size(); ++r) {
    const auto& n = nodes[r];
    const auto id = "node " + std::to_string(r);
    if (n.level == 0 || n.level > c.k()) {
      fail(id + ": level " + std::to_string(n.level) + " outside 1..k");
      continue;
    }
    for (NodeRef child : {n.high, n.low}) {
      if (child >= r) {
        fail(id + ": child " + std::to_string(child) + " is not allocated before its parent");
        continue;
      }
      const Level cl = nodes[child].level;
      if (cl >= n.level) {
        fail(id + ": child " + std::to_string(child) + " at level " + std::to_string(cl) +
             " is not below level " + std::to_string(n.level));
        continue;
      }
      if (mode == StructureMode::QuasiReduced) {
        bool ok = child == kFalse || cl + 1 == n.level;
        if (!ok) {
          fail(id + ": child " + std::to_string(child) + " skips levels (" +
               std::to_string(n.level) + " -> " + std::to_string(cl) + ")");
        }
      }
    }
  }
  if (mode == StructureMode::QuasiReduced && c.root() != kFalse &&
      nodes[c.root()].level != c.k()) {
    fail("root is not at level k");
  }
  return report;
}

std::string to_dot(const Circuit& c) {
  std::ostringstream out;
  out << "digraph pathsdd {\n";
  out << "  n0 [shape=box,label=\"⊥\"];\n";
  out << "  n1 [shape=box,label=\"⊤\"];\n";
  std::vector<bool> reach(c.size(), false);
  reach[c.root()] = true;
  for (std::size_t i = c.size(); i-- > 2;) {
    if (!reach[i]) continue;
    const auto& n = c.node(static_cast<NodeRef>(i));
    reach[n.high] = reach[n.low] = true;
  }
  for (NodeRef r = 2; r < c.size(); ++r) {
    if (!reach[r]) continue;
    const auto& n = c.node(r);
    out << "  n" << r << " [shape=ellipse,label=\"Y" << c.var_of(r) << "\"];\n";
    out << "  n" << r << " -> n" << n.high << " [style=solid];\n";
    out << "  n" << r << " -> n" << n.low << " [style=dashed];\n";
  }
  out << "  root [shape=plaintext,label=\"root\"];\n";
  out << "  root -> n" << c.root() << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace pathsdd
