#include "pathsdd/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "pathsdd/error.hpp"

namespace pathsdd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Cycle: return "E_CYCLE";
    case ErrorCode::Degenerate: return "E_DEGENERATE";
    case ErrorCode::UnsatCondition: return "E_UNSAT_CONDITION";
    case ErrorCode::Range: return "E_RANGE";
    case ErrorCode::OracleMismatch: return "E_ORACLE_MISMATCH";
  }
  return "E_UNKNOWN";
}

Dag::Dag(std::string_view source, std::string_view target) {
  source_ = add_vertex(source);
  target_ = add_vertex(target);
}

VertexId Dag::add_vertex(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto id = static_cast<VertexId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

EdgeLabel Dag::add_edge(std::string_view tail, std::string_view head) {
  if (tail == head) {
    throw Error(ErrorCode::Parse, "self-loop on vertex '" + std::string(tail) + "'");
  }
  return add_edge(add_vertex(tail), add_vertex(head));
}

EdgeLabel Dag::add_edge(VertexId tail, VertexId head) {
  if (tail >= names_.size() || head >= names_.size()) {
    throw Error(ErrorCode::Range, "edge endpoint out of range");
  }
  if (tail == head) throw Error(ErrorCode::Parse, "self-loop on vertex '" + names_[tail] + "'");
  edges_.push_back({tail, head});
  return static_cast<EdgeLabel>(edges_.size());
}

std::optional<VertexId> Dag::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Dag::in_degrees() const {
  std::vector<std::size_t> deg(names_.size(), 0);
  for (const auto& e : edges_) ++deg[e.head];
  return deg;
}

std::vector<std::size_t> Dag::out_degrees() const {
  std::vector<std::size_t> deg(names_.size(), 0);
  for (const auto& e : edges_) ++deg[e.tail];
  return deg;
}

bool operator==(const Dag& a, const Dag& b) {
  if (a.name(a.source()) != b.name(b.source())) return false;
  if (a.name(a.target()) != b.name(b.target())) return false;
  if (a.edge_count() != b.edge_count() || a.vertex_count() != b.vertex_count()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& ea = a.edges_[i];
    const auto& eb = b.edges_[i];
    if (a.name(ea.tail) != b.name(eb.tail) || a.name(ea.head) != b.name(eb.head)) return false;
  }
  return std::all_of(a.names_.begin(), a.names_.end(),
                     [&](const std::string& n) { return b.find(n).has_value(); });
}

// --- edge-list format -------------------------------------------------------

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, what, "line " + std::to_string(line));
}

}  // namespace

Dag parse_edge_list(std::istream& in) {
  std::optional<std::string> source;
  std::optional<std::string> target;
  std::optional<Dag> dag;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream tokens(line);
    std::string tag;
    if (!(tokens >> tag) || tag.front() == '#') continue;

    std::vector<std::string> args;
    for (std::string tok; tokens >> tok;) args.push_back(std::move(tok));

    if (tag == "s" || tag == "t") {
      auto& slot = tag == "s" ? source : target;
      if (args.size() != 1) parse_error(lineno, "expected '" + tag + " <vertex-id>'");
      if (slot) parse_error(lineno, "duplicate '" + tag + "' declaration");
      if (dag) parse_error(lineno, "'" + tag + "' declared after the first edge");
      slot = args[0];
    } else if (tag == "e") {
      if (args.size() != 2) parse_error(lineno, "expected 'e <tail-id> <head-id>'");
      if (!source) parse_error(lineno, "edge before 's' declaration");
      if (!target) parse_error(lineno, "edge before 't' declaration");
      if (!dag) dag.emplace(*source, *target);
      if (args[0] == args[1]) parse_error(lineno, "self-loop on vertex '" + args[0] + "'");
      dag->add_edge(args[0], args[1]);
    } else {
      parse_error(lineno, "unknown record '" + tag + "'");
    }
  }
  if (!source) throw Error(ErrorCode::Parse, "missing 's' declaration");
  if (!target) throw Error(ErrorCode::Parse, "missing 't' declaration");
  if (!dag) dag.emplace(*source, *target);
  return std::move(*dag);
}

Dag parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

Dag read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open graph file '" + path + "'", path);
  try {
    return parse_edge_list(in);
  } catch (const Error& e) {
    auto loc = e.location().empty() ? path : path + ":" + e.location();
    throw Error(e.code(), e.what(), loc);
  }
}

std::string serialize_edge_list(const Dag& d) {
  std::string out;
  out += "s " + d.name(d.source()) + "\n";
  out += "t " + d.name(d.target()) + "\n";
  for (const auto& e : d.edges()) out += "e " + d.name(e.tail) + " " + d.name(e.head) + "\n";
  return out;
}

// --- acyclicity ---------------------------------------------------------------

std::optional<Cycle> validate_acyclic(const Dag& d) {
  const auto n = d.vertex_count();
  std::vector<std::vector<VertexId>> succ(n);
  for (const auto& e : d.edges()) succ[e.tail].push_back(e.head);

  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(n, White);
  std::vector<VertexId> parent(n, 0);

  // Iterative DFS; a grey successor closes a cycle.
  for (VertexId root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == succ[v].size()) {
        colour[v] = Black;
        stack.pop_back();
        continue;
      }
      VertexId w = succ[v][next++];
      if (colour[w] == Grey) {
        std::vector<VertexId> rev{w};
        for (VertexId x = v; x != w; x = parent[x]) rev.push_back(x);
        rev.push_back(w);
        Cycle cycle;
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) cycle.push_back(d.name(*it));
        return cycle;
      }
      if (colour[w] == White) {
        colour[w] = Grey;
        parent[w] = v;
        stack.emplace_back(w, 0);
      }
    }
  }
  return std::nullopt;
}

// --- merging ----------------------------------------------------------------

Dag merge_endpoints(const Dag& d) {
  if (auto cycle = validate_acyclic(d)) {
    throw Error(ErrorCode::Cycle, "graph has a cycle through '" + cycle->front() + "'");
  }
  const auto in = d.in_degrees();
  const auto out = d.out_degrees();

  std::optional<VertexId> survivor_src;
  std::optional<VertexId> survivor_dst;
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    if (in[v] == 0 && out[v] > 0 && (!survivor_src || d.name(v) < d.name(*survivor_src))) {
      survivor_src = v;
    }
    if (out[v] == 0 && in[v] > 0 && (!survivor_dst || d.name(v) < d.name(*survivor_dst))) {
      survivor_dst = v;
    }
  }
  if (!survivor_src || !survivor_dst) {
    throw Error(ErrorCode::Degenerate, "graph has no edges; source and target collapse");
  }

  Dag merged(d.name(*survivor_src), d.name(*survivor_dst));
  for (const auto& e : d.edges()) {
    VertexId tail = in[e.tail] == 0 ? *survivor_src : e.tail;
    VertexId head = out[e.head] == 0 ? *survivor_dst : e.head;
    merged.add_edge(d.name(tail), d.name(head));
  }
  return merged;
}

// --- edge orderings -------------------------------------------------------

EdgeOrdering::EdgeOrdering(std::vector<EdgeLabel> rho) : rho_(std::move(rho)) {
  inverse_.assign(rho_.size(), 0);
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    EdgeLabel label = rho_[i];
    if (label == 0 || label > rho_.size() || inverse_[label - 1] != 0) {
      throw Error(ErrorCode::Range, "edge ordering is not a permutation");
    }
    inverse_[label - 1] = static_cast<Position>(i + 1);
  }
}

EdgeOrdering EdgeOrdering::identity(std::size_t k) {
  std::vector<EdgeLabel> rho(k);
  std::iota(rho.begin(), rho.end(), EdgeLabel{1});
  return EdgeOrdering(std::move(rho));
}

EdgeOrdering topological_edge_order(const Dag& d) {
  const auto n = d.vertex_count();
  auto indeg = d.in_degrees();
  std::vector<std::vector<VertexId>> succ(n);
  for (const auto& e : d.edges()) succ[e.tail].push_back(e.head);

  auto by_name = [&](VertexId a, VertexId b) { return d.name(a) > d.name(b); };
  std::priority_queue<VertexId, std::vector<VertexId>, decltype(by_name)> ready(by_name);
  for (VertexId v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }

  std::vector<std::size_t> topo_index(n, 0);
  std::size_t visited = 0;
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    topo_index[v] = visited++;
    for (VertexId w : succ[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (visited != n) {
    auto cycle = validate_acyclic(d);
    throw Error(ErrorCode::Cycle,
                "graph has a cycle through '" + (cycle ? cycle->front() : std::string("?")) + "'");
  }

  std::vector<EdgeLabel> rho(d.edge_count());
  std::iota(rho.begin(), rho.end(), EdgeLabel{1});
  std::stable_sort(rho.begin(), rho.end(), [&](EdgeLabel a, EdgeLabel b) {
    return topo_index[d.edge(a).tail] < topo_index[d.edge(b).tail];
  });
  return EdgeOrdering(std::move(rho));
}

bool is_topological(const Dag& d, const EdgeOrdering& ord) {
  if (ord.size() != d.edge_count()) return false;
  // For each vertex, every incoming edge must precede every outgoing edge.
  const auto n = d.vertex_count();
  std::vector<Position> last_in(n, 0);
  std::vector<Position> first_out(n, std::numeric_limits<Position>::max());
  for (EdgeLabel label = 1; label <= d.edge_count(); ++label) {
    const auto& e = d.edge(label);
    Position p = ord.position_of(label);
    last_in[e.head] = std::max(last_in[e.head], p);
    first_out[e.tail] = std::min(first_out[e.tail], p);
  }
  for (VertexId v = 0; v < n; ++v) {
    if (last_in[v] != 0 && first_out[v] != std::numeric_limits<Position>::max() &&
        last_in[v] >= first_out[v]) {
      return false;
    }
  }
  return true;
}

VertexSpans vertex_spans(const Dag& d, const EdgeOrdering& ord) {
  VertexSpans spans;
  spans.first_incoming.assign(d.vertex_count(), 0);
  spans.last_outgoing.assign(d.vertex_count(), 0);
  for (Position i = 1; i <= ord.size(); ++i) {
    const auto& e = d.edge(ord.label_at(i));
    if (spans.first_incoming[e.head] == 0) spans.first_incoming[e.head] = i;
    spans.last_outgoing[e.tail] = i;
  }
  return spans;
}

DagFragment prefix_graph(const Dag& d, const EdgeOrdering& ord, std::size_t j) {
  if (j > ord.size()) {
    throw Error(ErrorCode::Range, "prefix length " + std::to_string(j) + " exceeds k = " +
                                      std::to_string(ord.size()));
  }
  DagFragment frag;
  std::set<VertexId> seen;
  for (Position i = 1; i <= j; ++i) {
    const auto& e = d.edge(ord.label_at(i));
    frag.edges.push_back(e);
    seen.insert(e.tail);
    seen.insert(e.head);
  }
  frag.vertices.assign(seen.begin(), seen.end());
  return frag;
}

}  // namespace pathsdd
