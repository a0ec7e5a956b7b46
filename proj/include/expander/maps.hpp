#pragma once

// Combinatorial maps as permutations on darts. `alpha` pairs the two darts
// of an edge, `sigma` rotates darts counterclockwise around their vertex,
// and faces are the cycles of phi = sigma o alpha (alpha applied first).

#include "expander/multigraph.hpp"

#include <optional>
#include <vector>

namespace expander {

using Dart = int;

struct CombinatorialMap {
  std::size_t dart_count = 0;
  std::vector<Dart> alpha;
  std::vector<Dart> sigma;
  Dart root = 0;

  Dart phi(Dart d) const {
    return sigma[static_cast<std::size_t>(alpha[static_cast<std::size_t>(d)])];
  }
  std::size_t edge_count() const { return dart_count / 2; }

  friend bool operator==(const CombinatorialMap &, const CombinatorialMap &) = default;
};

struct MapSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  int genus = 0;
  /// Sorted ascending.
  std::vector<int> face_degrees;

  friend bool operator==(const MapSummary &, const MapSummary &) = default;
};

/// Checks alpha is a fixed-point-free involution, sigma a permutation, the
/// root in range, and that <sigma, alpha> is transitive; then applies
/// Euler's formula. Throws ArgumentError on any violation.
MapSummary validate(const CombinatorialMap &m);

/// Cycle index of each element of a permutation; cycles are numbered by
/// their smallest element.
std::vector<int> cycle_index(const std::vector<Dart> &perm);
/// Cycles of a permutation, each starting at its smallest element.
std::vector<std::vector<Dart>> cycles(const std::vector<Dart> &perm);

std::vector<Dart> face_permutation(const CombinatorialMap &m);
/// Orbits of phi, ordered by smallest dart. A face's degree is its length.
std::vector<std::vector<Dart>> faces(const CombinatorialMap &m);
std::vector<std::vector<Dart>> vertices(const CombinatorialMap &m);
int max_face_degree(const CombinatorialMap &m);

/// sigma* = phi, alpha* = alpha, same root. Vertex i of the dual is face i
/// of `m`, and with these conventions dual(dual(m)) == m dart for dart.
CombinatorialMap dual(const CombinatorialMap &m);

bool is_triangulation(const CombinatorialMap &m);

/// Index of the face to the right of the root edge: the phi-orbit of
/// alpha(root).
int root_face(const CombinatorialMap &m);

struct UnderlyingGraph {
  Multigraph graph;
  /// Vertex (sigma-cycle) at the origin of each dart.
  std::vector<Vertex> dart_vertex;
  /// Edge (alpha-orbit) of each dart. Edges are numbered by smallest dart.
  std::vector<EdgeId> dart_edge;
};

/// One vertex per sigma-cycle, one edge per alpha-orbit; an edge whose two
/// darts lie in the same sigma-cycle becomes a loop.
UnderlyingGraph underlying_graph(const CombinatorialMap &m);

/// Root-preserving dart bijection f with f o alpha = alpha' o f and
/// f o sigma = sigma' o f, if one exists.
std::optional<std::vector<Dart>> rooted_isomorphism(const CombinatorialMap &a,
                                                    const CombinatorialMap &b);

} // namespace expander
