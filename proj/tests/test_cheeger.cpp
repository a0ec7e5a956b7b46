#include "expander/cheeger.hpp"
#include "expander/errors.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace expander;

namespace {

// Triangle {0,1,2}, K4 on {3..6}, bridge 2-3, pendant vertex 7 on 0.
Multigraph barbell_with_pendant() {
  return Multigraph(8, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6},
                        {2, 3}, {0, 7}});
}

// Center 0 carrying two loops, joined to one corner of each of three
// triangles.
Multigraph looped_hub() {
  return Multigraph(10, {{0, 0}, {0, 0}, {0, 1}, {0, 4}, {0, 7}, {1, 2}, {2, 3}, {1, 3}, {4, 5},
                         {5, 6}, {4, 6}, {7, 8}, {8, 9}, {7, 9}});
}

VertexSet from_mask(oracle::Subset s, std::size_t n) {
  return VertexSet(n, oracle::members(s));
}

} // namespace

TEST_CASE("exact Cheeger constants of the small examples") {
  CHECK(cheeger_exact(fixture::cycle(4)).value == Rational(1, 2));
  CHECK(cheeger_exact(fixture::k4()).value == Rational(2, 3));
  const auto bar = cheeger_exact(fixture::barbell());
  CHECK(bar.value == Rational(1, 7));
  CHECK(bar.argmin == VertexSet(6, {0, 1, 2}));
  CHECK(cheeger_exact(fixture::k3()).value == Rational(1));
}

TEST_CASE("Cheeger errors and edge cases") {
  CHECK_THROWS_AS(cheeger_exact(Multigraph(3, std::vector<Edge>{})), DegenerateError);
  CHECK_THROWS_AS(cheeger_exact(fixture::cycle(17)), CapacityError);
  CHECK(cheeger_exact(fixture::cycle(17), {17}).value == Rational(2, 16));
  // A lone looped vertex has no admissible set at all.
  const auto loop = cheeger_exact(fixture::loop_vertex());
  CHECK(loop.unbounded);
  CHECK(loop.at_least(Rational(100)));
  CHECK(is_expander(fixture::loop_vertex(), Rational(100)));
}

TEST_CASE("bad sets") {
  const auto bar = fixture::barbell();
  const VertexSet tri(6, {0, 1, 2});
  CHECK(is_bad_set(bar, tri, Rational(1, 5)));
  CHECK_FALSE(is_bad_set(bar, tri, Rational(1, 10)));
  CHECK_FALSE(is_bad_set(fixture::k4(), VertexSet(4, {0}), Rational(1)));
  CHECK_THROWS_AS(is_bad_set(fixture::k4(), VertexSet::none(4), Rational(1)), DegenerateError);

  CHECK(is_strong_bad_set(bar, tri, Rational(1, 5)));
  const auto c6 = fixture::cycle(6);
  CHECK_FALSE(is_strong_bad_set(c6, VertexSet(6, {0, 3}), Rational(1)));
  CHECK(is_strong_bad_set(c6, VertexSet(6, {0, 1, 2}), Rational(1, 2)));
  // bad but not strong: the middle of a path
  const Multigraph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(is_bad_set(path, VertexSet(5, {2}), Rational(3)));
  CHECK_FALSE(is_strong_bad_set(path, VertexSet(5, {2}), Rational(3)));
}

TEST_CASE("isolated vertices") {
  const auto bar = fixture::barbell();
  CHECK(isolated_vertices_exact(bar, Rational(1, 5)) == VertexSet::all(6));
  CHECK(strongly_isolated_vertices_exact(bar, Rational(1, 5)) == VertexSet::all(6));
  CHECK(isolated_vertices_exact(fixture::k4(), Rational(1, 2)).empty());
  CHECK(strongly_isolated_vertices_exact(fixture::k4(), Rational(2, 3)).empty());
  CHECK(isolated_vertices_exact(fixture::k4(), Rational(1, 100)).empty());
}

TEST_CASE("oracles match brute force on a random corpus") {
  const auto graphs = oracle::corpus(200, 1234);
  for (const Multigraph &g : graphs) {
    const auto brute = oracle::cheeger(g);
    const auto exact = cheeger_exact(g);
    REQUIRE(brute.has_value() == !exact.unbounded);
    if (brute) {
      CHECK(exact.value == *brute);
      CHECK(cut_report(g, exact.argmin).ratio == exact.value);
      CHECK(is_connected(g, exact.argmin));
    }
    for (const Rational &k : {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(1)}) {
      const auto n = g.vertex_count();
      CHECK(oracle::mask(isolated_vertices_exact(g, k)) == oracle::isolated(g, k, false));
      CHECK(oracle::mask(strongly_isolated_vertices_exact(g, k)) == oracle::isolated(g, k, true));
      const auto listed = bad_sets_exact(g, k, false);
      CHECK(listed.size() == oracle::bad_sets(g, k, false).size());
      const bool no_bad = oracle::bad_sets(g, k, false).empty();
      CHECK(exact.at_least(k) == no_bad);
      CHECK(is_expander(g, k) == no_bad);
      const auto witnesses = isolation_witnesses(g, k, false);
      for (std::size_t v = 0; v < n; ++v)
        CHECK(witnesses[v].has_value() ==
              oracle::in(oracle::isolated(g, k, false), static_cast<int>(v)));
    }
  }
}

TEST_CASE("a sub-threshold set always has a bad connected component") {
  const auto graphs = oracle::corpus(150, 77);
  const Rational k(1, 2);
  for (const Multigraph &g : graphs) {
    const auto p = oracle::plain(g);
    for (oracle::Subset s = 1; s <= oracle::full(p); ++s) {
      const auto v = oracle::vol(p, s);
      if (v == 0 || 2 * v > oracle::total(p) || !(Rational(oracle::cut(p, s), v) < k))
        continue;
      bool found = false;
      for (const VertexSet &c : connected_components(g, from_mask(s, g.vertex_count())))
        if (volume(g, c) > 0 && is_bad_set(g, c, k))
          found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("isolation is monotone in kappa and strong implies plain") {
  const auto graphs = oracle::corpus(150, 31);
  const std::vector<Rational> ks{Rational(1, 8), Rational(1, 4), Rational(1, 3), Rational(1, 2)};
  for (const Multigraph &g : graphs)
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto plain = isolated_vertices_exact(g, ks[i]);
      CHECK(strongly_isolated_vertices_exact(g, ks[i]).is_subset_of(plain));
      if (i + 1 < ks.size())
        CHECK(plain.is_subset_of(isolated_vertices_exact(g, ks[i + 1])));
    }
}

TEST_CASE("strengthening: nothing to add when the complement is connected") {
  const auto bar = fixture::barbell();
  const VertexSet tri(6, {0, 1, 2});
  const auto cert = strengthen_bad_set(bar, tri, Rational(1, 2), Rational(1, 20));
  CHECK(cert.set == tri);
  CHECK(cert.strong);
}

TEST_CASE("strengthening absorbs the small component") {
  const auto g = barbell_with_pendant();
  const VertexSet x(8, {0, 1, 2});
  const Rational kappa(3, 5);
  REQUIRE(is_bad_set(g, x, kappa * kappa));
  const auto cert = strengthen_bad_set(g, x, kappa, Rational(1, 20));
  CHECK(cert.set == VertexSet(8, {0, 1, 2, 7}));
  CHECK(cert.report.ratio == Rational(1, 9));
  CHECK(is_strong_bad_set(g, cert.set, kappa));
  CHECK(x.is_subset_of(cert.set));
}

TEST_CASE("strengthening outside the hypotheses reports the failing clause") {
  const auto g = looped_hub();
  const Rational kappa(9, 10), eps(1, 4);
  CHECK_FALSE(strengthening_range_holds(kappa, eps));
  const VertexSet hub(10, {0});
  REQUIRE(is_bad_set(g, hub, kappa * kappa));
  try {
    strengthen_bad_set(g, hub, kappa, eps);
    FAIL("expected a construction failure");
  } catch (const ConstructionError &e) {
    CHECK(e.clause() == "half_volume");
  }
  CHECK_THROWS_AS(strengthen_bad_set(g, VertexSet(10, {1, 2, 3}), Rational(1, 10), eps),
                  ArgumentError);
}

TEST_CASE("range hypothesis") {
  CHECK(strengthening_range_holds(Rational(1, 4), Rational(1, 10)));
  CHECK_FALSE(strengthening_range_holds(Rational(4, 15), Rational(1, 10)));
  CHECK_FALSE(strengthening_range_holds(Rational(1, 10), Rational(1, 4)));
}

namespace {

struct LemmaTally {
  std::size_t applicable = 0, sets = 0;
};

void check_lemma(const Multigraph &g, const Rational &kappa, const Rational &eps, LemmaTally &t) {
  if (!strengthening_hypotheses_hold(g, kappa, eps))
    return;
  ++t.applicable;
  const auto strong = strongly_isolated_vertices_exact(g, kappa);
  CHECK(isolated_vertices_exact(g, kappa * kappa).is_subset_of(strong));
  for (const auto &c : bad_sets_exact(g, kappa * kappa, false)) {
    ++t.sets;
    const auto y = strengthen_bad_set(g, c.set, kappa, eps);
    CHECK(y.strong);
    CHECK(c.set.is_subset_of(y.set));
    CHECK(is_strong_bad_set(g, y.set, kappa));
  }
}

const std::vector<Rational> kLemmaEps{Rational(1, 50), Rational(1, 25), Rational(1, 20),
                                      Rational(1, 10), Rational(1, 5)};
const std::vector<Rational> kLemmaKappa{Rational(1, 10), Rational(1, 5), Rational(1, 4),
                                        Rational(3, 10), Rational(1, 2)};

} // namespace

TEST_CASE("strengthening lemma on the small corpus") {
  LemmaTally t;
  for (const Multigraph &g : oracle::corpus(200, 4242))
    for (const Rational &eps : kLemmaEps)
      for (const Rational &kappa : kLemmaKappa)
        check_lemma(g, kappa, eps, t);
  CHECK(t.applicable > 0);
  // Small graphs cannot host a kappa^2-bad set under the hypotheses.
  CHECK(t.sets == 0);
}

TEST_CASE("strengthening lemma on heavy multigraphs") {
  LemmaTally t;
  for (const Multigraph &g : oracle::heavy_corpus(120, 17))
    for (const Rational &eps : kLemmaEps)
      for (const Rational &kappa : kLemmaKappa)
        check_lemma(g, kappa, eps, t);
  CHECK(t.sets > 0);
  MESSAGE("applicable grid points: " << t.applicable << ", kappa^2-bad sets: " << t.sets);
}

TEST_CASE("strengthening output is always strong when it succeeds") {
  std::size_t ok = 0, failed = 0;
  for (const Multigraph &g : oracle::corpus(200, 555))
    for (const Rational &kappa : {Rational(1, 2), Rational(3, 4), Rational(1)})
      for (const auto &c : bad_sets_exact(g, kappa * kappa, false)) {
        try {
          const auto y = strengthen_bad_set(g, c.set, kappa, Rational(1, 10));
          ++ok;
          CHECK(is_strong_bad_set(g, y.set, kappa));
          CHECK(c.set.is_subset_of(y.set));
        } catch (const ConstructionError &) {
          ++failed;
          // Only possible when the hypotheses fail.
          CHECK_FALSE(strengthening_hypotheses_hold(g, kappa, Rational(1, 10)));
        }
      }
  CHECK(ok > 0);
  MESSAGE("succeeded " << ok << ", failed " << failed);
}

TEST_CASE("serial and parallel oracles agree") {
  for (const Multigraph &g : oracle::corpus(60, 5)) {
    const OracleOptions s{16, kernels::Exec::serial}, p{16, kernels::Exec::parallel};
    const auto a = cheeger_exact(g, s), b = cheeger_exact(g, p);
    CHECK(a.value == b.value);
    CHECK(a.argmin == b.argmin);
    CHECK(isolated_vertices_exact(g, Rational(1, 2), s) ==
          isolated_vertices_exact(g, Rational(1, 2), p));
  }
}
