#pragma once

#include "expander/rational.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace expander {

using Vertex = int;
using EdgeId = int;

/// Unordered endpoint pair, stored with `u <= v`. A loop has `u == v`.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  bool is_loop() const { return u == v; }
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// One side of an edge as seen from a vertex. A loop contributes two
/// half-edges to its vertex, so `degree == incident.size()`.
struct HalfEdge {
  Vertex neighbor;
  EdgeId edge;
};

/// Immutable multigraph with loops and parallel edges. Degrees use the
/// half-edge convention: a loop adds 2 to the degree of its vertex, so the
/// total volume is always twice the edge count.
class Multigraph {
public:
  Multigraph() = default;
  Multigraph(std::size_t vertex_count, std::vector<Edge> edges);
  Multigraph(std::size_t vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge &edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Unchecked; use the free `degree` for index validation.
  std::int64_t deg(Vertex v) const {
    return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
  }
  std::int64_t loops(Vertex v) const { return loops_[static_cast<std::size_t>(v)]; }
  std::span<const HalfEdge> incident(Vertex v) const {
    return std::span<const HalfEdge>(half_edges_)
        .subspan(offsets_[static_cast<std::size_t>(v)], static_cast<std::size_t>(deg(v)));
  }
  std::int64_t total_volume() const { return 2 * static_cast<std::int64_t>(edges_.size()); }

  /// Edges sorted lexicographically, the canonical serialization order.
  std::vector<Edge> canonical_edges() const;

  /// Same vertex count and the same edge multiset.
  friend bool operator==(const Multigraph &a, const Multigraph &b) {
    return a.vertex_count() == b.vertex_count() && a.canonical_edges() == b.canonical_edges();
  }

private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<HalfEdge> half_edges_;
  std::vector<std::int64_t> loops_;
};

/// Sorted set of vertex indices into a host graph of `host_size` vertices.
class VertexSet {
public:
  VertexSet() = default;
  VertexSet(std::size_t host_size, std::vector<Vertex> members);
  VertexSet(std::size_t host_size, std::initializer_list<Vertex> members)
      : VertexSet(host_size, std::vector<Vertex>(members)) {}

  static VertexSet all(std::size_t host_size);
  static VertexSet none(std::size_t host_size) { return VertexSet(host_size, std::vector<Vertex>{}); }
  /// Members are the positions where `mask` is nonzero.
  static VertexSet from_indicator(const std::vector<char> &mask);

  std::size_t host_size() const { return host_size_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Vertex> &members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(Vertex v) const;
  std::vector<char> indicator() const;

  VertexSet complement() const;
  VertexSet unite(const VertexSet &other) const;
  VertexSet minus(const VertexSet &other) const;
  VertexSet intersect(const VertexSet &other) const;
  bool is_subset_of(const VertexSet &other) const;
  bool disjoint_from(const VertexSet &other) const;

  friend bool operator==(const VertexSet &, const VertexSet &) = default;

private:
  void require_same_host(const VertexSet &other) const;

  std::size_t host_size_ = 0;
  std::vector<Vertex> members_;
};

/// Boundary and volumes of one vertex set, with the exact cut ratio.
struct CutReport {
  std::int64_t boundary = 0;
  std::int64_t volume_in = 0;
  std::int64_t volume_total = 0;
  Rational ratio;

  std::int64_t volume_out() const { return volume_total - volume_in; }
  /// vol(X) <= vol(G)/2, compared without division.
  bool within_half() const { return 2 * volume_in <= volume_total; }
};

struct InducedSubgraph {
  Multigraph graph;
  /// Host index of each vertex of `graph`, increasing.
  std::vector<Vertex> to_host;

  VertexSet lift(const VertexSet &local, std::size_t host_size) const;
};

std::int64_t degree(const Multigraph &g, Vertex v);
std::int64_t volume(const Multigraph &g, const VertexSet &x);
/// Oriented edges with tail in `x` and head in `y`. Requires disjoint sets.
std::int64_t boundary(const Multigraph &g, const VertexSet &x, const VertexSet &y);
/// Boundary of `x` against its complement.
std::int64_t boundary(const Multigraph &g, const VertexSet &x);
CutReport cut_report(const Multigraph &g, const VertexSet &x);

InducedSubgraph induced_subgraph(const Multigraph &g, const VertexSet &x);

/// Components of the whole graph, by decreasing volume, ties by smallest vertex.
std::vector<VertexSet> connected_components(const Multigraph &g);
/// Components of the subgraph induced by `x`, in host indices, same ordering
/// (volumes measured in `g`).
std::vector<VertexSet> connected_components(const Multigraph &g, const VertexSet &x);
bool is_connected(const Multigraph &g);
/// The subgraph induced by `x` is connected. The empty set is not.
bool is_connected(const Multigraph &g, const VertexSet &x);

} // namespace expander
