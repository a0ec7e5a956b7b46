#include "expander/multigraph.hpp"

#include "expander/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace expander {

namespace {

void check_vertex(std::size_t n, Vertex v) {
  if (v < 0 || static_cast<std::size_t>(v) >= n)
    throw IndexError("vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
}

void check_set(const Multigraph &g, const VertexSet &x) {
  if (x.host_size() != g.vertex_count())
    throw IndexError("vertex set indexes a graph of " + std::to_string(x.host_size()) +
                     " vertices, graph has " + std::to_string(g.vertex_count()));
}

} // namespace

Multigraph::Multigraph(std::size_t vertex_count, std::vector<Edge> edges)
    : edges_(std::move(edges)), offsets_(vertex_count + 1, 0), loops_(vertex_count, 0) {
  for (Edge &e : edges_) {
    check_vertex(vertex_count, e.u);
    check_vertex(vertex_count, e.v);
    if (e.u > e.v)
      std::swap(e.u, e.v);
    offsets_[static_cast<std::size_t>(e.u) + 1]++;
    offsets_[static_cast<std::size_t>(e.v) + 1]++;
    if (e.is_loop())
      loops_[static_cast<std::size_t>(e.u)]++;
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  half_edges_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge &e = edges_[id];
    half_edges_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, static_cast<EdgeId>(id)};
    half_edges_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, static_cast<EdgeId>(id)};
  }
}

Multigraph::Multigraph(std::size_t vertex_count,
                       std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : Multigraph(vertex_count, [&] {
        std::vector<Edge> list;
        list.reserve(edges.size());
        for (auto [u, v] : edges)
          list.push_back({u, v});
        return list;
      }()) {}

std::vector<Edge> Multigraph::canonical_edges() const {
  std::vector<Edge> sorted = edges_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

VertexSet::VertexSet(std::size_t host_size, std::vector<Vertex> members)
    : host_size_(host_size), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (Vertex v : members_)
    check_vertex(host_size_, v);
}

VertexSet VertexSet::all(std::size_t host_size) {
  std::vector<Vertex> m(host_size);
  std::iota(m.begin(), m.end(), 0);
  return VertexSet(host_size, std::move(m));
}

VertexSet VertexSet::from_indicator(const std::vector<char> &mask) {
  VertexSet s;
  s.host_size_ = mask.size();
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i])
      s.members_.push_back(static_cast<Vertex>(i));
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<char> VertexSet::indicator() const {
  std::vector<char> mask(host_size_, 0);
  for (Vertex v : members_)
    mask[static_cast<std::size_t>(v)] = 1;
  return mask;
}

void VertexSet::require_same_host(const VertexSet &other) const {
  if (host_size_ != other.host_size_)
    throw ArgumentError("vertex sets index different hosts");
}

VertexSet VertexSet::complement() const {
  auto mask = indicator();
  for (char &c : mask)
    c = !c;
  return from_indicator(mask);
}

VertexSet VertexSet::unite(const VertexSet &other) const {
  require_same_host(other);
  VertexSet out;
  out.host_size_ = host_size_;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::minus(const VertexSet &other) const {
  require_same_host(other);
  VertexSet out;
  out.host_size_ = host_size_;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::intersect(const VertexSet &other) const {
  require_same_host(other);
  VertexSet out;
  out.host_size_ = host_size_;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
  return out;
}

bool VertexSet::is_subset_of(const VertexSet &other) const {
  require_same_host(other);
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

bool VertexSet::disjoint_from(const VertexSet &other) const { return intersect(other).empty(); }

VertexSet InducedSubgraph::lift(const VertexSet &local, std::size_t host_size) const {
  std::vector<Vertex> m;
  m.reserve(local.size());
  for (Vertex v : local)
    m.push_back(to_host.at(static_cast<std::size_t>(v)));
  return VertexSet(host_size, std::move(m));
}

std::int64_t degree(const Multigraph &g, Vertex v) {
  check_vertex(g.vertex_count(), v);
  return g.deg(v);
}

std::int64_t volume(const Multigraph &g, const VertexSet &x) {
  check_set(g, x);
  std::int64_t vol = 0;
  for (Vertex v : x)
    vol += g.deg(v);
  return vol;
}

std::int64_t boundary(const Multigraph &g, const VertexSet &x, const VertexSet &y) {
  check_set(g, x);
  check_set(g, y);
  if (!x.disjoint_from(y))
    throw ArgumentError("boundary of overlapping vertex sets");
  const auto in_y = y.indicator();
  std::int64_t count = 0;
  for (Vertex v : x)
    for (const HalfEdge &h : g.incident(v))
      count += in_y[static_cast<std::size_t>(h.neighbor)];
  return count;
}

std::int64_t boundary(const Multigraph &g, const VertexSet &x) {
  check_set(g, x);
  const auto in_x = x.indicator();
  std::int64_t count = 0;
  for (Vertex v : x)
    for (const HalfEdge &h : g.incident(v))
      count += !in_x[static_cast<std::size_t>(h.neighbor)];
  return count;
}

CutReport cut_report(const Multigraph &g, const VertexSet &x) {
  CutReport r;
  r.volume_in = volume(g, x);
  if (r.volume_in == 0)
    throw DegenerateError("cut ratio of a zero-volume vertex set is undefined");
  r.boundary = boundary(g, x);
  r.volume_total = g.total_volume();
  r.ratio = Rational(r.boundary, r.volume_in);
  return r;
}

InducedSubgraph induced_subgraph(const Multigraph &g, const VertexSet &x) {
  check_set(g, x);
  if (x.empty())
    throw ArgumentError("induced subgraph on an empty vertex set");
  std::vector<Vertex> local(g.vertex_count(), -1);
  InducedSubgraph out;
  out.to_host = x.members();
  for (std::size_t i = 0; i < out.to_host.size(); ++i)
    local[static_cast<std::size_t>(out.to_host[i])] = static_cast<Vertex>(i);
  std::vector<Edge> kept;
  for (const Edge &e : g.edges()) {
    const Vertex a = local[static_cast<std::size_t>(e.u)];
    const Vertex b = local[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0)
      kept.push_back({a, b});
  }
  out.graph = Multigraph(out.to_host.size(), std::move(kept));
  return out;
}

std::vector<VertexSet> connected_components(const Multigraph &g, const VertexSet &x) {
  check_set(g, x);
  const std::size_t n = g.vertex_count();
  std::vector<char> allowed = x.indicator();
  std::vector<char> seen(n, 0);
  struct Component {
    std::int64_t vol;
    std::vector<Vertex> members;
  };
  std::vector<Component> found;
  std::vector<Vertex> stack;
  for (Vertex s : x) {
    if (seen[static_cast<std::size_t>(s)])
      continue;
    Component c{0, {}};
    seen[static_cast<std::size_t>(s)] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      c.members.push_back(v);
      c.vol += g.deg(v);
      for (const HalfEdge &h : g.incident(v)) {
        auto w = static_cast<std::size_t>(h.neighbor);
        if (allowed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(h.neighbor);
        }
      }
    }
    found.push_back(std::move(c));
  }
  // Discovery order already sorts by smallest member; stable sort keeps it for ties.
  std::stable_sort(found.begin(), found.end(),
                   [](const Component &a, const Component &b) { return a.vol > b.vol; });
  std::vector<VertexSet> out;
  out.reserve(found.size());
  for (auto &c : found)
    out.emplace_back(n, std::move(c.members));
  return out;
}

std::vector<VertexSet> connected_components(const Multigraph &g) {
  return connected_components(g, VertexSet::all(g.vertex_count()));
}

bool is_connected(const Multigraph &g, const VertexSet &x) {
  return !x.empty() && connected_components(g, x).size() == 1;
}

bool is_connected(const Multigraph &g) { return is_connected(g, VertexSet::all(g.vertex_count())); }

} // namespace expander
