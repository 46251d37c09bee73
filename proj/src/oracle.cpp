#include "pathsdd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "pathsdd/error.hpp"

namespace pathsdd::oracle {

namespace {

struct OutEdge {
  EdgeLabel label;
  VertexId head;
};

std::vector<std::vector<OutEdge>> out_lists(const Dag& d) {
  std::vector<std::vector<OutEdge>> out(d.vertex_count());
  for (EdgeLabel l = 1; l <= d.edge_count(); ++l) out[d.edge(l).tail].push_back({l, d.edge(l).head});
  return out;
}

void guard(const Dag& d, std::size_t max_edges) {
  if (d.edge_count() > max_edges) {
    throw Error(ErrorCode::Range, "oracle refuses k = " + std::to_string(d.edge_count()) +
                                      " (limit " + std::to_string(max_edges) + ")");
  }
}

// Collects every simple path from `from` that stops at a vertex accepted by
// `is_end`.
void enumerate_from(const std::vector<std::vector<OutEdge>>& out, VertexId from,
                    const std::function<bool(VertexId)>& is_end, std::size_t k,
                    std::vector<State>& found) {
  State current(k);
  std::vector<bool> on_path(out.size(), false);
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (is_end(v)) {
      found.push_back(current);
      return;
    }
    on_path[v] = true;
    for (const auto& e : out[v]) {
      if (on_path[e.head]) continue;
      current.set(e.label - 1, true);
      dfs(e.head);
      current.set(e.label - 1, false);
    }
    on_path[v] = false;
  };
  dfs(from);
}

PathSet finish(std::vector<State> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return PathSet{std::move(states)};
}

}  // namespace

bool PathSet::contains(const State& y) const {
  return std::binary_search(states.begin(), states.end(), y);
}

bool is_path_state(const Dag& d, const State& y) {
  if (y.size() != d.edge_count()) throw Error(ErrorCode::Range, "state length mismatch");
  const VertexId s = d.source();
  const VertexId t = d.target();
  if (s == t) return false;

  std::vector<int> in(d.vertex_count(), 0), out(d.vertex_count(), 0);
  std::vector<EdgeLabel> next_edge(d.vertex_count(), 0);
  std::size_t selected = 0;
  for (EdgeLabel l = 1; l <= d.edge_count(); ++l) {
    if (!y.get_label(l)) continue;
    ++selected;
    ++in[d.edge(l).head];
    ++out[d.edge(l).tail];
    next_edge[d.edge(l).tail] = l;
  }
  if (selected == 0) return false;
  if (out[s] != 1 || in[s] != 0 || in[t] != 1 || out[t] != 0) return false;
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    if (v == s || v == t) continue;
    if (in[v] != out[v] || in[v] > 1) return false;
  }
  // Walk from s; the path must consume every selected edge.
  std::size_t walked = 0;
  for (VertexId v = s; v != t; v = d.edge(next_edge[v]).head) {
    if (out[v] != 1 || walked > selected) return false;
    ++walked;
  }
  return walked == selected;
}

PathSet brute_paths(const Dag& d) {
  guard(d, kMaxPathEdges);
  if (d.source() == d.target()) {
    throw Error(ErrorCode::Degenerate, "source and target coincide");
  }
  std::vector<State> found;
  const VertexId t = d.target();
  enumerate_from(out_lists(d), d.source(), [t](VertexId v) { return v == t; }, d.edge_count(),
                 found);
  return finish(std::move(found));
}

PathSet brute_source_sink_paths(const Dag& d) {
  guard(d, kMaxPathEdges);
  const auto in = d.in_degrees();
  const auto out = d.out_degrees();
  const auto lists = out_lists(d);
  std::vector<State> found;
  auto is_sink = [&](VertexId v) { return out[v] == 0 && in[v] > 0; };
  for (VertexId v = 0; v < d.vertex_count(); ++v) {
    if (in[v] == 0 && out[v] > 0) enumerate_from(lists, v, is_sink, d.edge_count(), found);
  }
  return finish(std::move(found));
}

Distribution brute_distribution(const Dag& d, const Logits& a) {
  guard(d, kMaxDistributionEdges);
  const std::size_t k = d.edge_count();
  if (a.size() != k) throw Error(ErrorCode::Range, "logits length mismatch");
  const PathSet paths = brute_paths(d);
  const double log_z = a.log_partition();

  Distribution dist;
  dist.rows.reserve(std::size_t{1} << k);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    State y(k);
    for (std::size_t i = 0; i < k; ++i) y.set(i, (m >> (k - 1 - i)) & 1U);  // y_1 is the MSB
    DistributionRow row;
    row.prob = std::exp(log_weight(a, y) - log_z);
    row.satisfies = paths.contains(y);
    row.state = std::move(y);
    dist.total_prob += row.prob;
    if (row.satisfies) dist.constraint_prob += row.prob;
    dist.rows.push_back(std::move(row));
  }
  for (auto& row : dist.rows) {
    row.cond_prob = row.satisfies && dist.constraint_prob > 0 ? row.prob / dist.constraint_prob : 0.0;
  }
  return dist;
}

BestPath dag_best_path(const Dag& d, const Logits& a) {
  const std::size_t k = d.edge_count();
  if (a.size() != k) throw Error(ErrorCode::Range, "logits length mismatch");
  const auto lists = out_lists(d);
  const VertexId t = d.target();

  // Reverse postorder of a DFS from s; successors are finished first, so
  // relaxing in postorder sees every suffix before its predecessors.
  std::vector<VertexId> postorder;
  std::vector<std::uint8_t> state(d.vertex_count(), 0);
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    state[v] = 1;
    if (v != t) {
      for (const auto& e : lists[v]) {
        if (state[e.head] == 1) throw Error(ErrorCode::Cycle, "graph is not acyclic");
        if (state[e.head] == 0) dfs(e.head);
      }
    }
    state[v] = 2;
    postorder.push_back(v);
  };
  dfs(d.source());

  struct Best {
    State suffix;
    double weight;
  };
  std::vector<std::optional<Best>> best(d.vertex_count());
  for (VertexId v : postorder) {
    if (v == t) {
      best[v] = Best{State(k), 0.0};
      continue;
    }
    for (const auto& e : lists[v]) {
      if (!best[e.head]) continue;
      State candidate = best[e.head]->suffix;
      candidate.set(e.label - 1, true);
      const double w = log_weight(a, candidate);
      if (!best[v] || w > best[v]->weight || (w == best[v]->weight && candidate < best[v]->suffix)) {
        best[v] = Best{std::move(candidate), w};
      }
    }
  }
  if (d.source() == t || !best[d.source()]) {
    throw Error(ErrorCode::UnsatCondition, "no path from source to target");
  }
  return {best[d.source()]->suffix, best[d.source()]->weight};
}

std::vector<RankedPath> ranked_paths(const Dag& d, const Logits& a) {
  const PathSet paths = brute_paths(d);
  std::vector<RankedPath> out;
  out.reserve(paths.size());
  for (const auto& y : paths.states) out.push_back({y, log_weight(a, y)});
  std::sort(out.begin(), out.end(), [](const RankedPath& x, const RankedPath& y) {
    if (x.log_weight != y.log_weight) return x.log_weight > y.log_weight;
    return x.state < y.state;
  });
  return out;
}

boost::multiprecision::cpp_int binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  boost::multiprecision::cpp_int c = 1;
  for (unsigned i = 1; i <= r; ++i) {
    c *= n - r + i;
    c /= i;
  }
  return c;
}

}  // namespace pathsdd::oracle
