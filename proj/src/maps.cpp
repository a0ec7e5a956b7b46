#include "expander/maps.hpp"

#include "expander/errors.hpp"

#include <algorithm>
#include <string>

namespace expander {

namespace {

void check_permutation(const std::vector<Dart> &p, std::size_t n, const char *name) {
  if (p.size() != n)
    throw ArgumentError(std::string(name) + " has " + std::to_string(p.size()) +
                        " entries, expected " + std::to_string(n));
  std::vector<char> hit(n, 0);
  for (Dart d : p) {
    if (d < 0 || static_cast<std::size_t>(d) >= n)
      throw ArgumentError(std::string(name) + " maps outside the dart range");
    if (hit[static_cast<std::size_t>(d)]++)
      throw ArgumentError(std::string(name) + " is not a permutation");
  }
}

} // namespace

std::vector<int> cycle_index(const std::vector<Dart> &perm) {
  std::vector<int> index(perm.size(), -1);
  int next = 0;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (index[start] >= 0)
      continue;
    for (auto d = static_cast<Dart>(start); index[static_cast<std::size_t>(d)] < 0;
         d = perm[static_cast<std::size_t>(d)])
      index[static_cast<std::size_t>(d)] = next;
    ++next;
  }
  return index;
}

std::vector<std::vector<Dart>> cycles(const std::vector<Dart> &perm) {
  std::vector<std::vector<Dart>> out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start])
      continue;
    std::vector<Dart> cyc;
    for (auto d = static_cast<Dart>(start); !seen[static_cast<std::size_t>(d)];
         d = perm[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = 1;
      cyc.push_back(d);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<Dart> face_permutation(const CombinatorialMap &m) {
  std::vector<Dart> phi(m.dart_count);
  for (std::size_t d = 0; d < m.dart_count; ++d)
    phi[d] = m.phi(static_cast<Dart>(d));
  return phi;
}

MapSummary validate(const CombinatorialMap &m) {
  const std::size_t n = m.dart_count;
  if (n == 0 || n % 2 != 0)
    throw ArgumentError("dart count must be positive and even, got " + std::to_string(n));
  check_permutation(m.alpha, n, "alpha");
  check_permutation(m.sigma, n, "sigma");
  for (std::size_t d = 0; d < n; ++d) {
    const auto a = static_cast<std::size_t>(m.alpha[d]);
    if (a == d)
      throw ArgumentError("alpha has a fixed point at dart " + std::to_string(d));
    if (static_cast<std::size_t>(m.alpha[a]) != d)
      throw ArgumentError("alpha is not an involution at dart " + std::to_string(d));
  }
  if (m.root < 0 || static_cast<std::size_t>(m.root) >= n)
    throw ArgumentError("root dart out of range");

  std::vector<char> seen(n, 0);
  std::vector<Dart> stack{0};
  seen[0] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const auto d = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    ++reached;
    for (Dart next : {m.alpha[d], m.sigma[d]})
      if (!seen[static_cast<std::size_t>(next)]) {
        seen[static_cast<std::size_t>(next)] = 1;
        stack.push_back(next);
      }
  }
  if (reached != n)
    throw ArgumentError("map is not connected: darts split into several orbits");

  MapSummary s;
  s.vertices = cycles(m.sigma).size();
  s.edges = n / 2;
  for (const auto &f : cycles(face_permutation(m)))
    s.face_degrees.push_back(static_cast<int>(f.size()));
  std::sort(s.face_degrees.begin(), s.face_degrees.end());
  s.faces = s.face_degrees.size();
  const auto euler = static_cast<long long>(s.vertices) - static_cast<long long>(s.edges) +
                     static_cast<long long>(s.faces);
  if (euler > 2 || (2 - euler) % 2 != 0)
    throw ArgumentError("Euler characteristic " + std::to_string(euler) +
                        " is not that of an orientable surface");
  s.genus = static_cast<int>((2 - euler) / 2);
  return s;
}

std::vector<std::vector<Dart>> faces(const CombinatorialMap &m) {
  return cycles(face_permutation(m));
}

std::vector<std::vector<Dart>> vertices(const CombinatorialMap &m) { return cycles(m.sigma); }

int max_face_degree(const CombinatorialMap &m) {
  int best = 0;
  for (const auto &f : faces(m))
    best = std::max(best, static_cast<int>(f.size()));
  return best;
}

CombinatorialMap dual(const CombinatorialMap &m) {
  return CombinatorialMap{m.dart_count, m.alpha, face_permutation(m), m.root};
}

bool is_triangulation(const CombinatorialMap &m) {
  for (const auto &f : faces(m))
    if (f.size() != 3)
      return false;
  return true;
}

int root_face(const CombinatorialMap &m) {
  return cycle_index(face_permutation(m))[static_cast<std::size_t>(
      m.alpha[static_cast<std::size_t>(m.root)])];
}

UnderlyingGraph underlying_graph(const CombinatorialMap &m) {
  UnderlyingGraph out;
  out.dart_vertex = cycle_index(m.sigma);
  out.dart_edge.assign(m.dart_count, -1);
  std::vector<Edge> edges;
  for (std::size_t d = 0; d < m.dart_count; ++d) {
    if (out.dart_edge[d] >= 0)
      continue;
    const auto a = static_cast<std::size_t>(m.alpha[d]);
    const auto id = static_cast<EdgeId>(edges.size());
    out.dart_edge[d] = id;
    out.dart_edge[a] = id;
    edges.push_back({out.dart_vertex[d], out.dart_vertex[a]});
  }
  const std::size_t vertex_count =
      m.dart_count == 0 ? 0
                        : static_cast<std::size_t>(
                              *std::max_element(out.dart_vertex.begin(), out.dart_vertex.end()) + 1);
  out.graph = Multigraph(vertex_count, std::move(edges));
  return out;
}

std::optional<std::vector<Dart>> rooted_isomorphism(const CombinatorialMap &a,
                                                    const CombinatorialMap &b) {
  if (a.dart_count != b.dart_count)
    return std::nullopt;
  const std::size_t n = a.dart_count;
  std::vector<Dart> f(n, -1);
  std::vector<char> used(n, 0);
  std::vector<Dart> stack;
  auto assign = [&](Dart x, Dart y) {
    auto &slot = f[static_cast<std::size_t>(x)];
    if (slot >= 0)
      return slot == y;
    if (used[static_cast<std::size_t>(y)])
      return false;
    slot = y;
    used[static_cast<std::size_t>(y)] = 1;
    stack.push_back(x);
    return true;
  };
  if (n == 0)
    return f;
  if (!assign(a.root, b.root))
    return std::nullopt;
  while (!stack.empty()) {
    const auto x = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    const auto y = static_cast<std::size_t>(f[x]);
    if (!assign(a.alpha[x], b.alpha[y]) || !assign(a.sigma[x], b.sigma[y]))
      return std::nullopt;
  }
  if (std::find(f.begin(), f.end(), -1) != f.end())
    return std::nullopt;
  return f;
}

} // namespace expander
