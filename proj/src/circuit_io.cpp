#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>

#include "pathsdd/circuit.hpp"
#include "pathsdd/error.hpp"

namespace pathsdd {

void write_circuit(const Circuit& c, std::ostream& out) {
  out << "pathsdd 1 " << c.k() << ' ' << c.size() << '\n';
  out << "F 0\n";
  out << "T 1\n";
  for (NodeRef r = 2; r < c.size(); ++r) {
    const auto& n = c.node(r);
    out << "D " << r << ' ' << c.var_of(r) << ' ' << n.high << ' ' << n.low << '\n';
  }
  out << "root " << c.root() << '\n';
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream out;
  write_circuit(c, out);
  return out.str();
}

namespace {

struct RawNode {
  EdgeLabel var;
  NodeRef high;
  NodeRef low;
};

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, what, "line " + std::to_string(line));
}

// Orders variables top-down so that every parent variable sits above its
// decision children. Variables that never occur go to the bottom.
std::vector<EdgeLabel> infer_var_order(std::size_t k, const std::vector<RawNode>& raw) {
  std::vector<std::vector<EdgeLabel>> below(k + 1);
  std::vector<std::size_t> indeg(k + 1, 0);
  std::vector<bool> mentioned(k + 1, false);
  for (std::size_t i = 2; i < raw.size(); ++i) {
    const auto& n = raw[i];
    mentioned[n.var] = true;
    for (NodeRef child : {n.high, n.low}) {
      if (child <= kTrue) continue;
      EdgeLabel cv = raw[child].var;
      if (cv == n.var) {
        throw Error(ErrorCode::Parse, "variable " + std::to_string(cv) +
                                          " is tested twice along a walk (node " +
                                          std::to_string(i) + ")");
      }
      below[n.var].push_back(cv);
      ++indeg[cv];
    }
  }
  std::priority_queue<EdgeLabel, std::vector<EdgeLabel>, std::greater<>> ready;
  for (EdgeLabel v = 1; v <= k; ++v) {
    if (mentioned[v] && indeg[v] == 0) ready.push(v);
  }
  std::vector<EdgeLabel> top_down;
  while (!ready.empty()) {
    EdgeLabel v = ready.top();
    ready.pop();
    top_down.push_back(v);
    for (EdgeLabel w : below[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  std::size_t n_mentioned = std::count(mentioned.begin(), mentioned.end(), true);
  if (top_down.size() != n_mentioned) {
    throw Error(ErrorCode::Parse, "decision nodes do not follow a single variable order");
  }
  for (EdgeLabel v = 1; v <= k; ++v) {
    if (!mentioned[v]) top_down.push_back(v);
  }
  // var_of_level[level-1]; the top variable sits at level k.
  return {top_down.rbegin(), top_down.rend()};
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::optional<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    return std::nullopt;
  };

  auto header = next_line();
  if (!header) throw Error(ErrorCode::Parse, "empty circuit file");
  std::istringstream hs(*header);
  std::string magic;
  int version = 0;
  long long k = -1;
  long long count = -1;
  std::string extra;
  if (!(hs >> magic >> version >> k >> count) || (hs >> extra) || magic != "pathsdd" ||
      version != 1 || k < 0 || count < 2) {
    bad(lineno, "header must be 'pathsdd 1 <k> <node-count>'");
  }

  std::vector<RawNode> raw;
  raw.reserve(static_cast<std::size_t>(count));
  std::optional<NodeRef> root;

  while (auto l = next_line()) {
    std::istringstream ls(*l);
    std::string tag;
    ls >> tag;
    if (root) bad(lineno, "content after 'root' line");
    if (tag == "F" || tag == "T") {
      long long id = -1;
      if (!(ls >> id) || (ls >> extra)) bad(lineno, "expected '" + tag + " <id>'");
      const long long expected = tag == "F" ? kFalse : kTrue;
      if (id != expected || raw.size() != static_cast<std::size_t>(expected)) {
        bad(lineno, "terminal " + tag + " must be node " + std::to_string(expected) +
                        " in position");
      }
      raw.push_back({0, static_cast<NodeRef>(id), static_cast<NodeRef>(id)});
    } else if (tag == "D") {
      long long id = -1, var = -1, high = -1, low = -1;
      if (!(ls >> id >> var >> high >> low) || (ls >> extra)) {
        bad(lineno, "expected 'D <id> <var> <high-id> <low-id>'");
      }
      if (raw.size() < 2) bad(lineno, "decision node before terminals");
      if (var < 1 || var > k) bad(lineno, "variable " + std::to_string(var) + " outside 1..k");
      for (long long child : {high, low}) {
        if (child < 0 || child >= count) {
          bad(lineno, "dangling reference to node " + std::to_string(child));
        }
        if (child >= id) {
          bad(lineno, "child " + std::to_string(child) + " must precede its parent " +
                          std::to_string(id));
        }
      }
      if (id != static_cast<long long>(raw.size())) {
        bad(lineno, "node ids must be dense; expected " + std::to_string(raw.size()));
      }
      raw.push_back({static_cast<EdgeLabel>(var), static_cast<NodeRef>(high),
                     static_cast<NodeRef>(low)});
    } else if (tag == "root") {
      long long id = -1;
      if (!(ls >> id) || (ls >> extra)) bad(lineno, "expected 'root <id>'");
      if (id < 0 || id >= static_cast<long long>(raw.size())) {
        bad(lineno, "dangling root reference " + std::to_string(id));
      }
      root = static_cast<NodeRef>(id);
    } else {
      bad(lineno, "unknown record '" + tag + "'");
    }
  }
  if (raw.size() < 2) throw Error(ErrorCode::Parse, "missing terminal lines");
  if (raw.size() != static_cast<std::size_t>(count)) {
    throw Error(ErrorCode::Parse, "header announces " + std::to_string(count) +
                                      " nodes, file has " + std::to_string(raw.size()));
  }
  if (!root) throw Error(ErrorCode::Parse, "missing 'root' line");

  const auto uk = static_cast<std::size_t>(k);
  auto var_of_level = infer_var_order(uk, raw);
  std::vector<Level> level_of_var(uk + 1, 0);
  for (std::size_t i = 0; i < uk; ++i) level_of_var[var_of_level[i]] = static_cast<Level>(i + 1);

  std::vector<Node> nodes;
  nodes.reserve(raw.size());
  nodes.push_back({0, kFalse, kFalse});
  nodes.push_back({0, kTrue, kTrue});
  for (std::size_t i = 2; i < raw.size(); ++i) {
    nodes.push_back({level_of_var[raw[i].var], raw[i].high, raw[i].low});
  }
  Circuit c = Circuit::from_arena(uk, std::move(var_of_level), std::move(nodes), *root);
  if (auto report = validate_structure(c); !report.ok()) {
    throw Error(ErrorCode::Parse, "invalid circuit: " + report.violations.front());
  }
  return c;
}

Circuit deserialize_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_circuit(in);
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open circuit file '" + path + "'", path);
  try {
    return parse_circuit(in);
  } catch (const Error& e) {
    auto loc = e.location().empty() ? path : path + ":" + e.location();
    throw Error(e.code(), e.what(), loc);
  }
}

}  // namespace pathsdd
