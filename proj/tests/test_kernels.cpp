#include "expander/cheeger.hpp"
#include "expander/errors.hpp"
#include "expander/kernels.hpp"
#include "expander/maps.hpp"
#include "expander/sampler.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace expander;
using namespace expander::kernels;

namespace {

struct Everything {
  std::vector<SetStats> sets;
  void visit(const SetStats &s) { sets.push_back(s); }
  void merge(const Everything &o) { sets.insert(sets.end(), o.sets.begin(), o.sets.end()); }
};

bool same(const SetStats &a, const SetStats &b) {
  return a.set == b.set && a.boundary == b.boundary && a.volume == b.volume;
}

Multigraph dual_graph(int n, std::uint64_t seed) {
  return underlying_graph(dual(sample_gluing(n, seed))).graph;
}

} // namespace

TEST_CASE("enumeration visits each admissible connected set exactly once") {
  for (const Multigraph &g : oracle::corpus(150, 7)) {
    const SmallGraph small(g, 16);
    const auto all = enumerate_connected(small, Everything{}, Exec::serial).sets;
    std::set<Mask> seen;
    for (const SetStats &s : all) {
      CHECK(seen.insert(s.set).second);
      CHECK(s.volume == small.volume(s.set));
      CHECK(s.boundary == small.boundary(s.set));
    }
    const auto p = oracle::plain(g);
    std::size_t expected = 0;
    for (oracle::Subset s = 1; s <= oracle::full(p); ++s) {
      const auto v = oracle::vol(p, s);
      if (v > 0 && 2 * v <= oracle::total(p) && oracle::connected(p, s))
        ++expected;
    }
    CHECK(all.size() == expected);
  }
}

TEST_CASE("small graph views agree with the oracle") {
  for (const Multigraph &g : oracle::corpus(100, 8)) {
    const SmallGraph small(g, 16);
    const auto p = oracle::plain(g);
    for (oracle::Subset s = 0; s <= oracle::full(p); ++s) {
      CHECK(small.volume(s) == oracle::vol(p, s));
      CHECK(small.boundary(s) == oracle::cut(p, s));
      CHECK(small.connected(s) == oracle::connected(p, s));
    }
  }
}

TEST_CASE("capacity is enforced") {
  CHECK_THROWS_AS(SmallGraph(fixture::cycle(17), 16), CapacityError);
  CHECK_NOTHROW(SmallGraph(fixture::cycle(16), 16));
  CHECK_THROWS_AS(SmallGraph(fixture::cycle(64), 100), ArgumentError);
}

TEST_CASE("serial and parallel enumeration agree") {
  for (const Multigraph &g : oracle::corpus(120, 9)) {
    const SmallGraph small(g, 16);
    const Rational kappa(1, 3);

    const auto a = enumerate_connected(small, MinRatio{}, Exec::serial);
    const auto b = enumerate_connected(small, MinRatio{}, Exec::parallel);
    REQUIRE(a.best.has_value() == b.best.has_value());
    if (a.best)
      CHECK(same(*a.best, *b.best));

    for (bool strong : {false, true}) {
      const auto u1 = enumerate_connected(small, BadUnion{&small, kappa, strong, 0}, Exec::serial);
      const auto u2 =
          enumerate_connected(small, BadUnion{&small, kappa, strong, 0}, Exec::parallel);
      CHECK(u1.members == u2.members);

      const auto c1 = enumerate_connected(small, BadCollect{&small, kappa, strong, {}}, Exec::serial);
      const auto c2 =
          enumerate_connected(small, BadCollect{&small, kappa, strong, {}}, Exec::parallel);
      REQUIRE(c1.sets.size() == c2.sets.size());
      for (std::size_t i = 0; i < c1.sets.size(); ++i)
        CHECK(same(c1.sets[i], c2.sets[i]));

      const auto w1 = enumerate_connected(small, BadWitness{&small, kappa, strong, {}}, Exec::serial);
      const auto w2 =
          enumerate_connected(small, BadWitness{&small, kappa, strong, {}}, Exec::parallel);
      REQUIRE(w1.best.size() == w2.best.size());
      for (std::size_t v = 0; v < w1.best.size(); ++v) {
        REQUIRE(w1.best[v].has_value() == w2.best[v].has_value());
        if (w1.best[v])
          CHECK(same(*w1.best[v], *w2.best[v]));
      }
    }
  }
}

TEST_CASE("ball growing is identical on both paths and yields bad prefixes") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Multigraph g = dual_graph(40, seed);
    for (const Rational &kappa : {Rational(1, 4), Rational(1, 10)}) {
      BallOptions opts;
      const auto s = grow_balls(g, kappa, opts, Exec::serial);
      const auto p = grow_balls(g, kappa, opts, Exec::parallel);
      REQUIRE(s.size() == p.size());
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].order == p[i].order);
        CHECK(s[i].bad_prefixes == p[i].bad_prefixes);
        for (std::size_t len : s[i].bad_prefixes) {
          const VertexSet x(g.vertex_count(),
                            std::vector<Vertex>(s[i].order.begin(),
                                                s[i].order.begin() + static_cast<long>(len)));
          CHECK(is_bad_set(g, x, kappa));
        }
      }
      if (auto best = best_ball(g, s))
        CHECK(is_bad_set(g, VertexSet(g.vertex_count(), best->members), kappa));
    }
  }
}

TEST_CASE("power iteration is bitwise identical on both paths") {
  const Multigraph g = dual_graph(60, 3);
  const auto s = spectral_embedding(g, 200, 11, Exec::serial);
  const auto p = spectral_embedding(g, 200, 11, Exec::parallel);
  CHECK(s == p);
  if (auto c = sweep_cut(g, s, Rational(1, 4)))
    CHECK(is_bad_set(g, VertexSet(g.vertex_count(), c->members), Rational(1, 4)));
}

TEST_CASE("sweep finds the barbell bridge") {
  const Multigraph g = fixture::barbell();
  const auto emb = spectral_embedding(g, 300, 1, Exec::serial);
  const auto c = sweep_cut(g, emb, Rational(1, 5));
  REQUIRE(c.has_value());
  CHECK(c->boundary == 1);
  CHECK(c->volume == 7);
}
