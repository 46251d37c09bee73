#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pathsdd {

using VertexId = std::uint32_t;
/// 1-based label of an edge in file order.
using EdgeLabel = std::uint32_t;
/// 1-based position of an edge in a (topological) edge order.
using Position = std::uint32_t;

struct Edge {
  VertexId tail;
  VertexId head;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed multigraph with a designated source and target. The edge list
/// order is the original labelling: edge(1) is the first `e` line of the
/// input. Vertex ids are dense and assigned in order of first appearance.
class Dag {
 public:
  Dag(std::string_view source, std::string_view target);

  /// Returns the id of `name`, creating the vertex if needed.
  VertexId add_vertex(std::string_view name);
  /// Appends an edge; throws Error(Parse) on a self-loop.
  EdgeLabel add_edge(std::string_view tail, std::string_view head);
  EdgeLabel add_edge(VertexId tail, VertexId head);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  VertexId source() const { return source_; }
  VertexId target() const { return target_; }

  const std::string& name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find(std::string_view name) const;

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeLabel label) const { return edges_.at(label - 1); }

  std::vector<std::size_t> in_degrees() const;
  std::vector<std::size_t> out_degrees() const;

  /// Same source/target names, same vertex-name set and same edge list
  /// (compared by endpoint names). Vertex id assignment is ignored.
  friend bool operator==(const Dag& a, const Dag& b);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  VertexId source_ = 0;
  VertexId target_ = 0;
};

/// Parses the line-oriented edge-list format:
///
///     # comment
///     s <vertex>
///     t <vertex>
///     e <tail> <head>
///
/// `s` and `t` must each appear exactly once and before any `e` line.
Dag parse_edge_list(std::istream& in);
Dag parse_edge_list(std::string_view text);
Dag read_edge_list_file(const std::string& path);

std::string serialize_edge_list(const Dag& d);

/// Vertex names along a directed cycle, first vertex repeated at the end.
using Cycle = std::vector<std::string>;

/// nullopt when `d` is acyclic, otherwise one cycle witness.
std::optional<Cycle> validate_acyclic(const Dag& d);

/// Collapses every source (in-degree 0) into the lexicographically smallest
/// one and every sink (out-degree 0) into the smallest sink. Edge count and
/// order are kept; isolated vertices are dropped. The result's declared
/// source and target are the survivors.
Dag merge_endpoints(const Dag& d);

/// A permutation of the edges. `rho[i-1]` is the original label of the edge
/// at new position i; `relabel(i)` is the composed map applied to leaves
/// after compilation (identical to rho since labels are file positions).
class EdgeOrdering {
 public:
  EdgeOrdering() = default;
  /// Throws Error(Range) unless `rho` is a bijection on 1..rho.size().
  explicit EdgeOrdering(std::vector<EdgeLabel> rho);

  static EdgeOrdering identity(std::size_t k);

  std::size_t size() const { return rho_.size(); }
  EdgeLabel label_at(Position i) const { return rho_.at(i - 1); }
  Position position_of(EdgeLabel label) const { return inverse_.at(label - 1); }
  EdgeLabel relabel(Position i) const { return label_at(i); }

  std::span<const EdgeLabel> rho() const { return rho_; }
  std::span<const Position> rho_inverse() const { return inverse_; }

  friend bool operator==(const EdgeOrdering&, const EdgeOrdering&) = default;

 private:
  std::vector<EdgeLabel> rho_;
  std::vector<Position> inverse_;
};

/// Kahn's algorithm with ties broken by vertex name, then edges sorted by
/// (topological index of tail, original label). Throws Error(Cycle).
EdgeOrdering topological_edge_order(const Dag& d);

/// True when every pair of consecutive edges (u,v),(v,w) has increasing
/// positions, which is equivalent to every path being increasing.
bool is_topological(const Dag& d, const EdgeOrdering& ord);

/// Positions are 1-based; 0 means "no such edge".
struct VertexSpans {
  std::vector<Position> first_incoming;  // sigma_m
  std::vector<Position> last_outgoing;   // sigma_M

  std::optional<Position> sigma_m(VertexId v) const {
    return first_incoming.at(v) ? std::optional(first_incoming[v]) : std::nullopt;
  }
  std::optional<Position> sigma_M(VertexId v) const {
    return last_outgoing.at(v) ? std::optional(last_outgoing[v]) : std::nullopt;
  }
};

VertexSpans vertex_spans(const Dag& d, const EdgeOrdering& ord);

/// Sub-graph made of the first j edges of an order and their endpoints.
struct DagFragment {
  std::vector<VertexId> vertices;  // ascending id
  std::vector<Edge> edges;         // in order
};

/// Throws Error(Range) when j > k.
DagFragment prefix_graph(const Dag& d, const EdgeOrdering& ord, std::size_t j);

}  // namespace pathsdd
