#pragma once

// Data-parallel kernels behind the oracles and the heuristics. Each kernel
// has a serial path that is the reference for the OpenMP path; both must
// produce identical results (tests/test_kernels.cpp, bench/bench_kernels.cpp).

#include "expander/multigraph.hpp"
#include "expander/rational.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace expander::kernels {

enum class Exec { serial, parallel };

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxMaskVertices = 63;

inline Mask bit(int v) { return Mask{1} << v; }

/// Bitmask view of a small multigraph for exhaustive enumeration.
class SmallGraph {
public:
  /// Throws CapacityError when the graph has more than `cap` vertices.
  SmallGraph(const Multigraph &g, std::size_t cap);

  int size() const { return n_; }
  std::int64_t total_volume() const { return total_; }
  std::int64_t deg(int v) const { return deg_[static_cast<std::size_t>(v)]; }
  Mask neighbors(int v) const { return nbr_[static_cast<std::size_t>(v)]; }
  Mask all() const { return n_ == 64 ? ~Mask{0} : bit(n_) - 1; }

  /// Change in boundary when `v` (not in `set`) joins `set`.
  std::int64_t boundary_delta(int v, Mask set) const;
  /// Induced connectivity of `set` (false for the empty set).
  bool connected(Mask set) const;
  std::int64_t volume(Mask set) const;
  std::int64_t boundary(Mask set) const;

private:
  int n_ = 0;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> deg_;
  std::vector<std::int64_t> loops_;
  std::vector<Mask> nbr_;
  std::vector<std::int64_t> mult_;
};

/// A connected vertex set reported by the enumeration.
struct SetStats {
  Mask set = 0;
  std::int64_t boundary = 0;
  std::int64_t volume = 0;
};

/// Lexicographic order of the sorted member lists (a proper prefix is smaller).
bool lex_less(Mask a, Mask b);

/// Canonical order used for every "best set" choice: ratio, then volume,
/// then lexicographic members.
std::strong_ordering compare_sets(const SetStats &a, const SetStats &b);

inline bool is_bad(const SetStats &s, const Rational &kappa) {
  return s.volume > 0 && ratio_below(s.boundary, s.volume, kappa);
}

/// Visits every connected set whose smallest vertex is `anchor`, with
/// positive volume and at most half the total volume. Each set is produced
/// exactly once: branches are include/exclude decisions on the frontier.
template <class Fn> void enumerate_from_anchor(const SmallGraph &g, int anchor, Fn &&fn) {
  const std::int64_t total = g.total_volume();
  const std::int64_t d0 = g.deg(anchor);
  if (2 * d0 > total || d0 == 0)
    return;
  const Mask allowed = g.all() & ~(bit(anchor) - 1);
  struct Frame {
    const SmallGraph &g;
    Fn &fn;
    Mask allowed;
    std::int64_t total;
    void rec(Mask set, std::int64_t bd, std::int64_t vol, Mask cand, Mask excl) {
      fn(SetStats{set, bd, vol});
      Mask rest = cand;
      while (rest) {
        const int v = std::countr_zero(rest);
        const Mask b = bit(v);
        rest &= ~b;
        const std::int64_t nv = vol + g.deg(v);
        if (2 * nv <= total) {
          const Mask next = (rest | g.neighbors(v)) & allowed & ~set & ~b & ~excl;
          rec(set | b, bd + g.boundary_delta(v, set), nv, next, excl);
        }
        excl |= b;
      }
    }
  };
  Frame frame{g, fn, allowed, total};
  frame.rec(bit(anchor), g.boundary_delta(anchor, 0), d0, g.neighbors(anchor) & allowed, 0);
}

/// Runs `Acc::visit` over all enumerated sets. Accumulators are merged in
/// anchor order, so the parallel result equals the serial one.
template <class Acc> Acc enumerate_connected(const SmallGraph &g, const Acc &proto, Exec exec) {
  const int n = g.size();
  if (exec == Exec::serial) {
    Acc acc = proto;
    for (int a = 0; a < n; ++a)
      enumerate_from_anchor(g, a, [&](const SetStats &s) { acc.visit(s); });
    return acc;
  }
  std::vector<Acc> parts(static_cast<std::size_t>(n), proto);
#pragma omp parallel for schedule(dynamic, 1)
  for (int a = 0; a < n; ++a) {
    Acc &local = parts[static_cast<std::size_t>(a)];
    enumerate_from_anchor(g, a, [&](const SetStats &s) { local.visit(s); });
  }
  Acc acc = proto;
  for (Acc &p : parts)
    acc.merge(p);
  return acc;
}

/// Minimum of `compare_sets` over all visited sets.
struct MinRatio {
  std::optional<SetStats> best;
  void visit(const SetStats &s) {
    if (!best || compare_sets(s, *best) < 0)
      best = s;
  }
  void merge(const MinRatio &o) {
    if (o.best)
      visit(*o.best);
  }
};

/// Union of all kappa-bad sets (optionally only strong ones).
struct BadUnion {
  const SmallGraph *graph = nullptr;
  Rational kappa;
  bool strong = false;
  Mask members = 0;
  void visit(const SetStats &s) {
    if (!is_bad(s, kappa) || (s.set & ~members) == 0)
      return;
    if (strong && !graph->connected(graph->all() & ~s.set))
      return;
    members |= s.set;
  }
  void merge(const BadUnion &o) { members |= o.members; }
};

/// Every kappa-bad set in enumeration order.
struct BadCollect {
  const SmallGraph *graph = nullptr;
  Rational kappa;
  bool strong = false;
  std::vector<SetStats> sets;
  void visit(const SetStats &s) {
    if (!is_bad(s, kappa))
      return;
    if (strong && !graph->connected(graph->all() & ~s.set))
      return;
    sets.push_back(s);
  }
  void merge(const BadCollect &o) { sets.insert(sets.end(), o.sets.begin(), o.sets.end()); }
};

/// For each vertex, the best kappa-bad set containing it. `best` stays
/// empty when no bad set exists.
struct BadWitness {
  const SmallGraph *graph = nullptr;
  Rational kappa;
  bool strong = false;
  std::vector<std::optional<SetStats>> best;
  void visit(const SetStats &s) {
    if (!is_bad(s, kappa))
      return;
    if (strong && !graph->connected(graph->all() & ~s.set))
      return;
    if (best.empty())
      best.resize(static_cast<std::size_t>(graph->size()));
    for (Mask m = s.set; m; m &= m - 1) {
      auto &slot = best[static_cast<std::size_t>(std::countr_zero(m))];
      if (!slot || compare_sets(s, *slot) < 0)
        slot = s;
    }
  }
  void merge(const BadWitness &o) {
    if (o.best.empty())
      return;
    if (best.empty())
      best.resize(static_cast<std::size_t>(graph->size()));
    for (std::size_t v = 0; v < o.best.size(); ++v)
      if (o.best[v] && (!best[v] || compare_sets(*o.best[v], *best[v]) < 0))
        best[v] = o.best[v];
  }
};

VertexSet to_vertex_set(Mask m, std::size_t host_size);
Mask to_mask(const VertexSet &s);

/// A candidate bad set found by a heuristic, members sorted.
struct Candidate {
  std::vector<Vertex> members;
  std::int64_t boundary = 0;
  std::int64_t volume = 0;
};

/// Same canonical order as `compare_sets`.
std::strong_ordering compare_candidates(const Candidate &a, const Candidate &b);

/// Breadth-first ball grown from one source: the BFS order truncated to the
/// largest bad prefix, the lengths of all bad prefixes, and the best one.
struct BallResult {
  std::vector<Vertex> order;
  std::vector<std::size_t> bad_prefixes;
  std::size_t best_prefix = 0;
  std::int64_t best_boundary = 0;
  std::int64_t best_volume = 0;
};

struct BallOptions {
  /// Largest ball explored, in vertices; 0 means unbounded.
  std::size_t max_ball = 0;
  /// Sources explored are 0..sources-1; 0 means all vertices.
  std::size_t sources = 0;
};

/// Grows a BFS ball from every source and records the bad prefixes. Balls
/// stop once their volume exceeds half the total.
std::vector<BallResult> grow_balls(const Multigraph &g, const Rational &kappa,
                                   const BallOptions &opts, Exec exec);

/// Best certificate among the ball results (members materialized and sorted).
std::optional<Candidate> best_ball(const Multigraph &g, const std::vector<BallResult> &balls);

/// Approximate second eigenvector of the lazy normalized adjacency operator
/// by power iteration with the stationary direction deflated, returned as
/// the embedding x_v / sqrt(deg v). Only the matrix-vector product runs in
/// parallel, so both paths are bitwise identical.
std::vector<double> spectral_embedding(const Multigraph &g, int iterations, std::uint64_t seed,
                                       Exec exec);

/// Sweeps prefixes of the embedding order in both directions and tests
/// every connected component of every prefix.
std::optional<Candidate> sweep_cut(const Multigraph &g, const std::vector<double> &embedding,
                                   const Rational &kappa);

} // namespace expander::kernels
