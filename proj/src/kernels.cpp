#include "expander/kernels.hpp"

#include "expander/errors.hpp"
#include "expander/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace expander::kernels {

SmallGraph::SmallGraph(const Multigraph &g, std::size_t cap) {
  if (cap > kMaxMaskVertices)
    throw ArgumentError("enumeration cap above " + std::to_string(kMaxMaskVertices));
  if (g.vertex_count() > cap)
    throw CapacityError("graph has " + std::to_string(g.vertex_count()) +
                        " vertices, exact enumeration cap is " + std::to_string(cap));
  n_ = static_cast<int>(g.vertex_count());
  total_ = g.total_volume();
  const auto n = static_cast<std::size_t>(n_);
  deg_.resize(n);
  loops_.resize(n);
  nbr_.assign(n, 0);
  mult_.assign(n * n, 0);
  for (int v = 0; v < n_; ++v) {
    deg_[static_cast<std::size_t>(v)] = g.deg(v);
    loops_[static_cast<std::size_t>(v)] = g.loops(v);
    for (const HalfEdge &h : g.incident(v)) {
      if (h.neighbor == v)
        continue;
      nbr_[static_cast<std::size_t>(v)] |= bit(h.neighbor);
      mult_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(h.neighbor)]++;
    }
  }
}

std::int64_t SmallGraph::boundary_delta(int v, Mask set) const {
  const auto n = static_cast<std::size_t>(n_);
  std::int64_t inside = 0;
  for (Mask m = set & nbr_[static_cast<std::size_t>(v)]; m; m &= m - 1)
    inside += mult_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(std::countr_zero(m))];
  return deg_[static_cast<std::size_t>(v)] - 2 * loops_[static_cast<std::size_t>(v)] - 2 * inside;
}

bool SmallGraph::connected(Mask set) const {
  if (set == 0)
    return false;
  Mask seen = set & (~set + 1);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask m = frontier; m; m &= m - 1)
      next |= nbr_[static_cast<std::size_t>(std::countr_zero(m))];
    next &= set & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == set;
}

std::int64_t SmallGraph::volume(Mask set) const {
  std::int64_t vol = 0;
  for (Mask m = set; m; m &= m - 1)
    vol += deg_[static_cast<std::size_t>(std::countr_zero(m))];
  return vol;
}

std::int64_t SmallGraph::boundary(Mask set) const {
  std::int64_t bd = 0;
  Mask built = 0;
  for (Mask m = set; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    bd += boundary_delta(v, built);
    built |= bit(v);
  }
  return bd;
}

bool lex_less(Mask a, Mask b) {
  while (a && b) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb)
      return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

std::strong_ordering compare_sets(const SetStats &a, const SetStats &b) {
  if (auto c = compare_ratios(a.boundary, a.volume, b.boundary, b.volume); c != 0)
    return c;
  if (auto c = a.volume <=> b.volume; c != 0)
    return c;
  if (a.set == b.set)
    return std::strong_ordering::equal;
  return lex_less(a.set, b.set) ? std::strong_ordering::less : std::strong_ordering::greater;
}

VertexSet to_vertex_set(Mask m, std::size_t host_size) {
  std::vector<Vertex> members;
  for (; m; m &= m - 1)
    members.push_back(std::countr_zero(m));
  return VertexSet(host_size, std::move(members));
}

Mask to_mask(const VertexSet &s) {
  if (s.host_size() > kMaxMaskVertices)
    throw CapacityError("vertex set too large for a bitmask");
  Mask m = 0;
  for (Vertex v : s)
    m |= bit(v);
  return m;
}

std::strong_ordering compare_candidates(const Candidate &a, const Candidate &b) {
  if (auto c = compare_ratios(a.boundary, a.volume, b.boundary, b.volume); c != 0)
    return c;
  if (auto c = a.volume <=> b.volume; c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.members.begin(), a.members.end(),
                                                b.members.begin(), b.members.end());
}

namespace {

struct BallScratch {
  std::vector<unsigned> discovered;
  std::vector<unsigned> inside;
  std::vector<Vertex> queue;
  unsigned generation = 0;

  explicit BallScratch(std::size_t n) : discovered(n, 0), inside(n, 0) { queue.reserve(n); }
};

BallResult grow_one(const Multigraph &g, Vertex source, const Rational &kappa,
                    const BallOptions &opts, BallScratch &s) {
  BallResult out;
  if (g.deg(source) == 0)
    return out;
  const std::int64_t total = g.total_volume();
  const unsigned gen = ++s.generation;
  s.queue.clear();
  s.queue.push_back(source);
  s.discovered[static_cast<std::size_t>(source)] = gen;
  std::int64_t vol = 0;
  std::int64_t bd = 0;
  std::size_t head = 0;
  while (head < s.queue.size()) {
    const Vertex v = s.queue[head];
    vol += g.deg(v);
    if (2 * vol > total)
      break;
    ++head;
    std::int64_t into = 0;
    for (const HalfEdge &h : g.incident(v))
      if (h.neighbor != v && s.inside[static_cast<std::size_t>(h.neighbor)] == gen)
        ++into;
    bd += g.deg(v) - 2 * g.loops(v) - 2 * into;
    s.inside[static_cast<std::size_t>(v)] = gen;
    if (ratio_below(bd, vol, kappa)) {
      out.bad_prefixes.push_back(head);
      if (out.best_prefix == 0 ||
          compare_ratios(bd, vol, out.best_boundary, out.best_volume) < 0) {
        out.best_prefix = head;
        out.best_boundary = bd;
        out.best_volume = vol;
      }
    }
    if (opts.max_ball != 0 && head >= opts.max_ball)
      break;
    for (const HalfEdge &h : g.incident(v)) {
      auto w = static_cast<std::size_t>(h.neighbor);
      if (s.discovered[w] != gen) {
        s.discovered[w] = gen;
        s.queue.push_back(h.neighbor);
      }
    }
  }
  if (!out.bad_prefixes.empty())
    out.order.assign(s.queue.begin(),
                     s.queue.begin() + static_cast<std::ptrdiff_t>(out.bad_prefixes.back()));
  return out;
}

} // namespace

std::vector<BallResult> grow_balls(const Multigraph &g, const Rational &kappa,
                                   const BallOptions &opts, Exec exec) {
  const std::size_t n = g.vertex_count();
  const std::size_t sources = opts.sources == 0 ? n : std::min(opts.sources, n);
  std::vector<BallResult> results(sources);
  if (exec == Exec::serial) {
    BallScratch scratch(n);
    for (std::size_t s = 0; s < sources; ++s)
      results[s] = grow_one(g, static_cast<Vertex>(s), kappa, opts, scratch);
    return results;
  }
#pragma omp parallel
  {
    BallScratch scratch(n);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(sources); ++s)
      results[static_cast<std::size_t>(s)] =
          grow_one(g, static_cast<Vertex>(s), kappa, opts, scratch);
  }
  return results;
}

std::optional<Candidate> best_ball(const Multigraph &g, const std::vector<BallResult> &balls) {
  (void)g;
  std::optional<Candidate> best;
  for (const BallResult &b : balls) {
    if (b.best_prefix == 0)
      continue;
    if (best) {
      auto c = compare_ratios(b.best_boundary, b.best_volume, best->boundary, best->volume);
      if (c > 0 || (c == 0 && b.best_volume > best->volume))
        continue;
    }
    Candidate cand;
    cand.members.assign(b.order.begin(),
                        b.order.begin() + static_cast<std::ptrdiff_t>(b.best_prefix));
    std::sort(cand.members.begin(), cand.members.end());
    cand.boundary = b.best_boundary;
    cand.volume = b.best_volume;
    if (!best || compare_candidates(cand, *best) < 0)
      best = std::move(cand);
  }
  return best;
}

std::vector<double> spectral_embedding(const Multigraph &g, int iterations, std::uint64_t seed,
                                       Exec exec) {
  const std::size_t n = g.vertex_count();
  std::vector<double> inv_sqrt(n, 0.0), top(n, 0.0), x(n), y(n, 0.0);
  const double total = static_cast<double>(g.total_volume());
  if (n == 0 || total == 0.0)
    return std::vector<double>(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.deg(static_cast<Vertex>(v)));
    inv_sqrt[v] = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
    top[v] = std::sqrt(d / total);
  }
  std::uint64_t state = seed;
  for (double &xi : x)
    xi = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-52 - 1.0;

  auto deflate_normalize = [&](std::vector<double> &z) {
    double dot = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      dot += top[v] * z[v];
    double norm = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      z[v] -= dot * top[v];
      norm += z[v] * z[v];
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (double &zi : z)
        zi /= norm;
  };
  auto apply = [&](std::size_t v) {
    double acc = 0.0;
    for (const HalfEdge &h : g.incident(static_cast<Vertex>(v)))
      acc += x[static_cast<std::size_t>(h.neighbor)] * inv_sqrt[static_cast<std::size_t>(h.neighbor)];
    y[v] = 0.5 * x[v] + 0.5 * inv_sqrt[v] * acc;
  };

  deflate_normalize(x);
  for (int it = 0; it < iterations; ++it) {
    if (exec == Exec::serial) {
      for (std::size_t v = 0; v < n; ++v)
        apply(v);
    } else {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t v = 0; v < static_cast<std::ptrdiff_t>(n); ++v)
        apply(static_cast<std::size_t>(v));
    }
    std::swap(x, y);
    deflate_normalize(x);
  }
  for (std::size_t v = 0; v < n; ++v)
    x[v] *= inv_sqrt[v];
  return x;
}

namespace {

struct SweepHit {
  bool reverse = false;
  std::size_t step = 0;
  Vertex anchor = 0;
  std::int64_t boundary = 0;
  std::int64_t volume = 0;
};

Vertex find_root(std::vector<Vertex> &parent, Vertex v) {
  while (parent[static_cast<std::size_t>(v)] != v) {
    auto &p = parent[static_cast<std::size_t>(v)];
    p = parent[static_cast<std::size_t>(p)];
    v = p;
  }
  return v;
}

} // namespace

std::optional<Candidate> sweep_cut(const Multigraph &g, const std::vector<double> &embedding,
                                   const Rational &kappa) {
  const std::size_t n = g.vertex_count();
  const std::int64_t total = g.total_volume();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return embedding[static_cast<std::size_t>(a)] < embedding[static_cast<std::size_t>(b)];
  });

  std::optional<SweepHit> best;
  for (bool reverse : {false, true}) {
    std::vector<Vertex> parent(n);
    std::vector<std::int64_t> vol(n, 0), bd(n, 0);
    std::vector<char> in_prefix(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const Vertex v = reverse ? order[n - 1 - k] : order[k];
      const auto vi = static_cast<std::size_t>(v);
      parent[vi] = v;
      vol[vi] = g.deg(v);
      bd[vi] = g.deg(v) - 2 * g.loops(v);
      for (const HalfEdge &h : g.incident(v)) {
        if (h.neighbor == v || !in_prefix[static_cast<std::size_t>(h.neighbor)])
          continue;
        Vertex rv = find_root(parent, v);
        Vertex rw = find_root(parent, h.neighbor);
        if (rv != rw) {
          parent[static_cast<std::size_t>(rw)] = rv;
          vol[static_cast<std::size_t>(rv)] += vol[static_cast<std::size_t>(rw)];
          bd[static_cast<std::size_t>(rv)] += bd[static_cast<std::size_t>(rw)];
        }
        bd[static_cast<std::size_t>(rv)] -= 2;
      }
      in_prefix[vi] = 1;
      const auto r = static_cast<std::size_t>(find_root(parent, v));
      if (vol[r] == 0 || 2 * vol[r] > total || !ratio_below(bd[r], vol[r], kappa))
        continue;
      if (best) {
        auto c = compare_ratios(bd[r], vol[r], best->boundary, best->volume);
        if (c > 0 || (c == 0 && vol[r] >= best->volume))
          continue;
      }
      best = SweepHit{reverse, k, v, bd[r], vol[r]};
    }
  }
  if (!best)
    return std::nullopt;

  std::vector<char> in_prefix(n, 0);
  for (std::size_t k = 0; k <= best->step; ++k)
    in_prefix[static_cast<std::size_t>(best->reverse ? order[n - 1 - k] : order[k])] = 1;
  Candidate cand;
  cand.boundary = best->boundary;
  cand.volume = best->volume;
  std::vector<Vertex> stack{best->anchor};
  in_prefix[static_cast<std::size_t>(best->anchor)] = 0;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    cand.members.push_back(v);
    for (const HalfEdge &h : g.incident(v)) {
      auto w = static_cast<std::size_t>(h.neighbor);
      if (in_prefix[w]) {
        in_prefix[w] = 0;
        stack.push_back(h.neighbor);
      }
    }
  }
  std::sort(cand.members.begin(), cand.members.end());
  return cand;
}

} // namespace expander::kernels
