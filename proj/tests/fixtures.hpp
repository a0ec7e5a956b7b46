#pragma once

#include "expander/maps.hpp"
#include "expander/multigraph.hpp"

#include <map>
#include <utility>
#include <vector>

namespace fixture {

using expander::CombinatorialMap;
using expander::Dart;
using expander::Multigraph;

// Two triangles {0,1,2}, {3,4,5} joined by the edge 2-3.
inline Multigraph barbell() {
  return Multigraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}
inline Multigraph k3() { return Multigraph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Multigraph k4() {
  return Multigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}
inline Multigraph cycle(int n) {
  std::vector<expander::Edge> e;
  for (int i = 0; i < n; ++i)
    e.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
  return Multigraph(static_cast<std::size_t>(n), e);
}
// Center 0 with five leaves.
inline Multigraph star5() { return Multigraph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}); }
inline Multigraph loop_vertex() { return Multigraph(1, {{0, 0}}); }

/// Map whose faces are the given oriented vertex cycles; side i of face f
/// runs from f[i] to f[i+1] and is glued to the opposite side. Every
/// directed side must appear exactly once.
inline CombinatorialMap from_faces(const std::vector<std::vector<int>> &faces) {
  std::vector<std::pair<int, int>> sides;
  std::vector<Dart> next;
  for (const auto &f : faces) {
    const auto base = static_cast<Dart>(sides.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      sides.emplace_back(f[i], f[(i + 1) % f.size()]);
      next.push_back(base + static_cast<Dart>((i + 1) % f.size()));
    }
  }
  std::map<std::pair<int, int>, Dart> index;
  for (std::size_t d = 0; d < sides.size(); ++d)
    index[sides[d]] = static_cast<Dart>(d);
  CombinatorialMap m;
  m.dart_count = sides.size();
  m.alpha.resize(sides.size());
  m.sigma.resize(sides.size());
  for (std::size_t d = 0; d < sides.size(); ++d)
    m.alpha[d] = index.at({sides[d].second, sides[d].first});
  for (std::size_t d = 0; d < sides.size(); ++d)
    m.sigma[d] = next[static_cast<std::size_t>(m.alpha[d])];
  m.root = 0;
  return m;
}

inline CombinatorialMap tetrahedron() {
  return from_faces({{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

/// Triangles (0,1,2) and (3,4,5) with sigma = phi o alpha.
inline CombinatorialMap two_triangles(std::vector<Dart> alpha) {
  CombinatorialMap m;
  m.dart_count = 6;
  m.alpha = std::move(alpha);
  m.sigma.resize(6);
  for (std::size_t d = 0; d < 6; ++d) {
    const Dart a = m.alpha[d];
    m.sigma[d] = a % 3 == 2 ? a - 2 : a + 1;
  }
  return m;
}

/// One vertex, three edges, two triangular faces: the torus.
inline CombinatorialMap torus_one_vertex() { return two_triangles({3, 4, 5, 0, 1, 2}); }

/// Two triangles glued along their whole boundary: a sphere, V = 3.
inline CombinatorialMap sphere_two_triangles() { return two_triangles({5, 4, 3, 2, 1, 0}); }

/// A loop with a pendant edge on the sphere; one face has degree 3 and
/// uses the pendant edge on both sides.
inline CombinatorialMap loop_with_pendant() {
  CombinatorialMap m;
  m.dart_count = 4;
  m.alpha = {1, 0, 3, 2};
  m.sigma = {1, 2, 0, 3};
  return m;
}

} // namespace fixture
