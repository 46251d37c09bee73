#include "pathsdd/compiler.hpp"

#include <omp.h>

#include "pathsdd/error.hpp"

namespace pathsdd {

namespace {

// Below this many vertices a level is too narrow to be worth a parallel loop.
constexpr std::size_t kParallelMinWidth = 256;

Node to_node(const NodeSpec& spec) { return {spec.level, spec.high, spec.low}; }

}  // namespace

CompileTable::CompileTable(std::size_t vertex_count, std::size_t k, VertexId source)
    : vertex_count_(vertex_count),
      k_(k),
      source_(source),
      cells_(vertex_count * k, kFalse),
      circuit_(k) {}

NodeSpec template_node(VertexId v, Position i, const Dag& d, const EdgeOrdering& ord,
                       const CompileTable& table) {
  const Edge& e = d.edge(ord.label_at(i));
  const VertexId s = table.source();
  if (i == 1) {
    if (v == s) return NodeSpec::decision(1, kFalse, kTrue);
    if (e.tail == s && e.head == v) return NodeSpec::decision(1, kTrue, kFalse);
    return NodeSpec::bottom();
  }
  const NodeRef stay = table.cell(v, i - 1);
  if (v == s) return NodeSpec::decision(i, kFalse, stay);
  if (e.head == v) return NodeSpec::decision(i, table.cell(e.tail, i - 1), stay);
  return NodeSpec::decision(i, kFalse, stay);
}

CompileTable build_table(const Dag& d, const EdgeOrdering& ord) {
  const std::size_t n = d.vertex_count();
  const std::size_t k = ord.size();
  CompileTable table(n, k, d.source());
  if (k == 0) return table;

  std::vector<Node> arena;
  arena.reserve(2 + 2 + n * (k - 1));
  arena.push_back({0, kFalse, kFalse});
  arena.push_back({0, kTrue, kTrue});

  // Level 1 holds at most two decision nodes (C_s^1 and the head of e_1).
  for (VertexId v = 0; v < n; ++v) {
    NodeSpec spec = template_node(v, 1, d, ord, table);
    if (spec.kind == NodeSpec::Kind::Decision) {
      table.set_cell(v, 1, static_cast<NodeRef>(arena.size()));
      arena.push_back(to_node(spec));
    }
  }

  // From level 2 on every vertex gets a decision node at base + v.
  const std::size_t level1_end = arena.size();
  arena.resize(level1_end + n * (k - 1));

#pragma omp parallel if (n >= kParallelMinWidth)
  for (Position i = 2; i <= k; ++i) {
    const std::size_t base = level1_end + (i - 2) * n;
#pragma omp for schedule(static)
    for (std::size_t v = 0; v < n; ++v) {
      NodeSpec spec = template_node(static_cast<VertexId>(v), i, d, ord, table);
      arena[base + v] = to_node(spec);
      table.set_cell(static_cast<VertexId>(v), i, static_cast<NodeRef>(base + v));
    }
  }

  std::vector<EdgeLabel> identity(k);
  for (std::size_t j = 0; j < k; ++j) identity[j] = static_cast<EdgeLabel>(j + 1);
  table.set_circuit(Circuit::from_arena(k, std::move(identity), std::move(arena), kFalse));
  return table;
}

Circuit untrimmed_circuit(const CompileTable& table, VertexId target) {
  Circuit c = table.circuit();
  c.set_root(table.k() == 0 ? kFalse : table.cell(target, static_cast<Position>(table.k())));
  return c;
}

Circuit trim(const CompileTable& table, const VertexSpans& spans, VertexId target) {
  const Circuit& full = table.circuit();
  const std::size_t k = table.k();
  if (k == 0) return Circuit(0);

  std::vector<bool> dead(full.size(), false);
  for (VertexId v = 0; v < table.vertex_count(); ++v) {
    if (v == table.source()) continue;
    const Position first_in = spans.first_incoming.at(v);
    const std::size_t limit = first_in == 0 ? k : first_in - 1;
    for (Position i = 1; i <= limit; ++i) {
      NodeRef r = table.cell(v, i);
      if (!Circuit::is_terminal(r)) dead[r] = true;
    }
  }
  // A decision whose children both resolve to ⊥ is ⊥ as well; this clears
  // the cells of vertices that no path from s reaches.
  for (std::size_t i = 2; i < full.size(); ++i) {
    const Node& nd = full.node(static_cast<NodeRef>(i));
    if ((nd.high == kFalse || dead[nd.high]) && (nd.low == kFalse || dead[nd.low])) dead[i] = true;
  }
  auto resolve = [&](NodeRef r) { return dead[r] ? kFalse : r; };

  const NodeRef root = resolve(table.cell(target, static_cast<Position>(k)));
  std::vector<bool> reach(full.size(), false);
  reach[root] = true;
  for (std::size_t i = full.size(); i-- > 2;) {
    if (!reach[i]) continue;
    const Node& nd = full.node(static_cast<NodeRef>(i));
    reach[resolve(nd.high)] = true;
    reach[resolve(nd.low)] = true;
  }

  std::vector<NodeRef> remap(full.size(), kFalse);
  remap[kTrue] = kTrue;
  std::vector<Node> arena{{0, kFalse, kFalse}, {0, kTrue, kTrue}};
  for (std::size_t i = 2; i < full.size(); ++i) {
    if (!reach[i]) continue;
    const Node& nd = full.node(static_cast<NodeRef>(i));
    remap[i] = static_cast<NodeRef>(arena.size());
    arena.push_back({nd.level, remap[resolve(nd.high)], remap[resolve(nd.low)]});
  }
  auto order = std::vector<EdgeLabel>(full.var_of_level().begin(), full.var_of_level().end());
  return Circuit::from_arena(k, std::move(order), std::move(arena), remap[root]);
}

Circuit rename_leaves(const Circuit& c, std::span<const EdgeLabel> relabel) {
  if (relabel.size() != c.k()) {
    throw Error(ErrorCode::Range, "relabel has " + std::to_string(relabel.size()) +
                                      " entries, circuit has k = " + std::to_string(c.k()));
  }
  std::vector<EdgeLabel> order(c.k());
  for (std::size_t j = 0; j < c.k(); ++j) {
    EdgeLabel current = c.var_of_level()[j];
    order[j] = relabel[current - 1];
  }
  // from_arena re-checks that the new order is a bijection.
  std::vector<Node> arena(c.nodes().begin(), c.nodes().end());
  return Circuit::from_arena(c.k(), std::move(order), std::move(arena), c.root());
}

Compilation compile_detailed(const Dag& input, const CompileOptions& options) {
  if (input.source() == input.target()) {
    throw Error(ErrorCode::Degenerate,
                "source and target are the same vertex '" + input.name(input.source()) + "'");
  }
  if (auto cycle = validate_acyclic(input)) {
    std::string path;
    for (const auto& v : *cycle) path += (path.empty() ? "" : " -> ") + v;
    throw Error(ErrorCode::Cycle, "graph is not acyclic: " + path);
  }
  const Dag d = options.merge_endpoints ? merge_endpoints(input) : input;

  Compilation out;
  out.vertex_count = d.vertex_count();
  out.ordering = topological_edge_order(d);

  CompileTable table = options.parallel ? build_table(d, out.ordering)
                                        : serial::build_table(d, out.ordering);
  out.untrimmed_decisions = table.decision_count();

  Circuit c = options.trim ? trim(table, vertex_spans(d, out.ordering), d.target())
                           : untrimmed_circuit(table, d.target());
  c = rename_leaves(c, out.ordering.rho());
  if (options.reduce) c = reduce(c);
  out.circuit = std::move(c);
  return out;
}

Circuit compile(const Dag& d, const CompileOptions& options) {
  return compile_detailed(d, options).circuit;
}

}  // namespace pathsdd
