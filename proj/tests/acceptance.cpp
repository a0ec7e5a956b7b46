// Acceptance run: one PASS/FAIL line per criterion.

#include "expander/cheeger.hpp"
#include "expander/duality.hpp"
#include "expander/errors.hpp"
#include "expander/harness.hpp"
#include "expander/io.hpp"
#include "expander/maps.hpp"
#include "expander/peeling.hpp"
#include "expander/sampler.hpp"

#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace expander;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<Multigraph> &corpus() {
  static const auto graphs = oracle::corpus(500, 20240601);
  return graphs;
}

Outcome cheeger_matches_brute_force() {
  const auto t0 = Clock::now();
  std::size_t mismatches = 0, unbounded = 0;
  for (const auto &g : corpus()) {
    const auto lib = cheeger_exact(g);
    const auto brute = oracle::cheeger(g);
    if (lib.unbounded) {
      ++unbounded;
      mismatches += brute.has_value();
    } else {
      mismatches += !brute || *brute != lib.value;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << corpus().size() << " graphs (" << unbounded << " with no admissible set), " << mismatches
     << " mismatches, " << secs << " s";
  return {mismatches == 0 && secs <= 300, os.str()};
}

Outcome definition_equivalence() {
  std::size_t exceptions = 0, checks = 0, expanders = 0;
  for (const auto &g : corpus())
    for (const Rational kappa : {Rational(1, 8), Rational(1, 4), Rational(1, 2)}) {
      ++checks;
      const auto h = cheeger_exact(g);
      const bool h_ok = h.at_least(kappa);
      const bool none_lib = !find_bad_set(g, kappa).has_value();
      const bool none_brute = oracle::bad_sets(g, kappa, false).empty();
      const auto brute_h = oracle::cheeger(g);
      const bool brute_h_ok = !brute_h || !(*brute_h < kappa);
      exceptions += !(h_ok == none_lib && none_lib == none_brute && brute_h_ok == none_brute);
      expanders += h_ok;
    }
  std::ostringstream os;
  os << checks << " (graph, kappa) pairs, " << expanders << " expanders, " << exceptions
     << " exceptions";
  return {exceptions == 0, os.str()};
}

struct LemmaCount {
  std::size_t applicable = 0, sets = 0, exceptions = 0;
};

void lemma_on(const Multigraph &g, LemmaCount &c) {
  static const std::vector<Rational> eps_grid{Rational(1, 50), Rational(1, 25), Rational(1, 20),
                                              Rational(1, 10), Rational(1, 5)};
  static const std::vector<Rational> kappa_grid{Rational(1, 10), Rational(1, 5), Rational(1, 4),
                                                Rational(3, 10), Rational(1, 2)};
  const auto p = oracle::plain(g);
  for (const Rational &eps : eps_grid)
    for (const Rational &kappa : kappa_grid) {
      const Rational a = (Rational(1) - Rational(2) * eps) / Rational(3);
      const Rational b = Rational(1) - Rational(4) * eps;
      if (!(kappa < std::min(a, b)))
        continue;
      const auto strong = oracle::isolated(g, kappa, true);
      if (Rational(oracle::vol(p, strong)) > eps * Rational(oracle::total(p)))
        continue;
      ++c.applicable;
      const auto squared = kappa * kappa;
      if ((oracle::isolated(g, squared, false) & ~strong) != 0)
        ++c.exceptions;
      for (oracle::Subset s : oracle::bad_sets(g, squared, false)) {
        ++c.sets;
        try {
          std::vector<char> ind(g.vertex_count(), 0);
          for (int v : oracle::members(s))
            ind[static_cast<std::size_t>(v)] = 1;
          const auto y = strengthen_bad_set(g, VertexSet::from_indicator(ind), kappa, eps);
          const auto m = oracle::mask(y.set);
          if (!oracle::bad(p, m, kappa, true) || (s & ~m) != 0)
            ++c.exceptions;
        } catch (const Error &) {
          ++c.exceptions;
        }
      }
    }
}

Outcome strengthening_lemma() {
  LemmaCount small, heavy;
  for (const auto &g : corpus())
    lemma_on(g, small);
  for (const auto &g : oracle::heavy_corpus(200, 17))
    lemma_on(g, heavy);
  std::ostringstream os;
  os << "corpus: " << small.applicable << " applicable grid points, " << small.sets
     << " kappa^2-bad sets; heavy supplement: " << heavy.applicable << " applicable, "
     << heavy.sets << " sets; " << small.exceptions + heavy.exceptions << " exceptions";
  return {small.exceptions + heavy.exceptions == 0 && heavy.sets > 0, os.str()};
}

Outcome peeling_theorem() {
  std::size_t runs = 0, exceptions = 0, instances = 0;
  for (const auto &g : corpus())
    for (const Rational kappa : {Rational(1, 4), Rational(1, 2), Rational(1)})
      for (const Rational eps : {Rational(1, 8), Rational(1, 4), Rational(2, 5)}) {
        const auto n = static_cast<std::int64_t>(g.edge_count());
        const auto p = oracle::plain(g);
        if (Rational(oracle::vol(p, oracle::isolated(g, kappa, false))) > eps * Rational(n))
          continue;
        ++instances;
        const Rational ke = (Rational(1) - eps) * kappa;
        for (int rerun = 0; rerun <= 20; ++rerun) {
          PeelOptions o;
          if (rerun > 0)
            o.random_seed = 1000 + static_cast<std::uint64_t>(rerun);
          const auto r = peel(g, kappa, eps, o);
          ++runs;
          const auto &rem = r.remainder.graph;
          bool ok = verify_peel(g, r.trace, kappa, eps).ok &&
                    check_removed_are_isolated(g, r.trace, ke) &&
                    Rational(static_cast<std::int64_t>(rem.edge_count())) >=
                        (Rational(1) - eps) * Rational(n);
          // Induced on the final vertex set, and an expander by the oracle.
          if (ok && !r.trace.final_set.empty()) {
            ok = rem == induced_subgraph(g, r.trace.final_set).graph;
            const auto h = oracle::cheeger(rem);
            ok = ok && (!h || !(*h < ke));
          }
          exceptions += !ok;
        }
      }
  std::ostringstream os;
  os << instances << " instances satisfying the volume hypothesis, " << runs
     << " runs (20 randomized reruns each), " << exceptions << " exceptions";
  return {exceptions == 0 && instances > 0, os.str()};
}

Outcome transfer_theorem() {
  std::size_t maps = 0, instances = 0, sets = 0, cap_applicable = 0, exceptions = 0;
  const Rational eps(1, 10);
  for (std::uint64_t i = 0; maps < 240; ++i) {
    const int n = 1 + static_cast<int>(i % 5);
    const auto m = sample_gluing(n, 77000 + i);
    ++maps;
    const auto dual_graph = underlying_graph(dual(m)).graph;
    std::vector<Rational> kappas{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
    for (const Rational &k0 : default_kappa0_grid(eps))
      kappas.push_back(k0 * k0);
    for (const Rational &kappa : kappas) {
      const auto r = peel(dual_graph, kappa, eps);
      if (r.remainder.graph.edge_count() == 0)
        continue;
      ++instances;
      std::vector<char> ind(dual_graph.vertex_count(), 0);
      for (Vertex v : r.remainder.to_host)
        ind[static_cast<std::size_t>(v)] = 1;
      try {
        const DualTransfer t({m, VertexSet::from_indicator(ind), r.trace.kappa_eps});
        const auto tr = transfer_expander(t);
        bool ok = tr.face_degree_bound == 3 && tr.bound == r.trace.kappa_eps / Rational(24) &&
                  tr.primal_verified;
        const auto brute = oracle::cheeger(tr.primal.graph);
        ok = ok && (!brute || !(*brute < tr.bound));
        const auto vn = tr.primal.graph.vertex_count();
        for (oracle::Subset s = 0; s < (oracle::Subset{1} << vn); ++s) {
          std::vector<char> xi(vn, 0);
          for (std::size_t v = 0; v < vn; ++v)
            xi[v] = static_cast<char>((s >> v) & 1U);
          const auto x = VertexSet::from_indicator(xi);
          ++sets;
          ok = ok && t.check_volume_lemma(x).holds && t.check_outgoing_lemma(x).holds;
          const auto cap = t.check_volume_cap_lemma(x);
          cap_applicable += cap.applicable;
          ok = ok && (!cap.applicable || cap.holds());
        }
        exceptions += !ok;
      } catch (const Error &e) {
        ++exceptions;
        std::cerr << "transfer failed: " << e.what() << '\n';
      }
    }
  }
  std::ostringstream os;
  os << maps << " triangulations (n <= 5), " << instances << " dual expanders, " << sets
     << " sets X (" << cap_applicable << " where the cap lemma applies), " << exceptions
     << " exceptions";
  return {exceptions == 0 && maps >= 200, os.str()};
}

Outcome map_invariants() {
  const auto t0 = Clock::now();
  std::size_t exceptions = 0;
  const int count = 10000;
  for (int i = 0; i < count; ++i) {
    const int n = 1 + i % 50;
    const auto m = sample_gluing(n, 500000 + static_cast<std::uint64_t>(i));
    try {
      const auto s = validate(m);
      const auto d = dual(m);
      const auto ds = validate(d);
      bool ok = static_cast<std::int64_t>(s.vertices) - static_cast<std::int64_t>(s.edges) +
                        static_cast<std::int64_t>(s.faces) ==
                    2 - 2 * s.genus &&
                ds.genus == s.genus && dual(d) == m && rooted_isomorphism(dual(d), m);
      const auto g = underlying_graph(m).graph, gd = underlying_graph(d).graph;
      ok = ok && g.total_volume() == 6 * n && gd.total_volume() == 6 * n;
      for (std::size_t v = 0; ok && v < gd.vertex_count(); ++v)
        ok = degree(gd, static_cast<Vertex>(v)) == 3;
      exceptions += !ok;
    } catch (const Error &) {
      ++exceptions;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << count << " maps, n in [1, 50], " << exceptions << " exceptions, " << secs << " s";
  return {exceptions == 0 && secs <= 60, os.str()};
}

Outcome sampler_histogram() {
  std::ostringstream os;
  bool pass = true;
  for (int n : {1, 2}) {
    const auto exact = oracle::pairing_genus_counts(n);
    const long long draws = 100000;
    const auto hist = genus_histogram(n, draws, 31337 + static_cast<std::uint64_t>(n));
    long long pairings = 0;
    for (auto [g, c] : exact)
      pairings += c;
    double worst = 0;
    for (auto [g, c] : exact) {
      const double p = static_cast<double>(c) / static_cast<double>(pairings);
      const double sd = std::sqrt(static_cast<double>(draws) * p * (1 - p));
      const auto it = hist.find(g);
      const double got = it == hist.end() ? 0.0 : static_cast<double>(it->second);
      worst = std::max(worst, std::abs(got - p * static_cast<double>(draws)) / sd);
    }
    for (auto [g, c] : hist)
      if (!exact.count(g))
        worst = INFINITY;
    pass = pass && worst <= 4.0;
    long long all_pairings = 1;
    for (long long k = 6LL * n - 1; k > 1; k -= 2)
      all_pairings *= k;
    os << "n=" << n << ": " << all_pairings << " pairings, " << pairings
       << " connected, max deviation " << worst
       << " sd; ";
  }
  return {pass, os.str()};
}

Outcome desk_pipeline(const std::filesystem::path &out_dir) {
  const auto t0 = Clock::now();
  std::ostringstream os;
  bool produced = true;
  for (double theta : {0.05, 0.1, 0.2}) {
    PipelineConfig cfg;
    cfg.n = 500;
    cfg.theta = theta;
    cfg.trials = 20;
    cfg.seed = 2024;
    cfg.strategy = Strategy::combined;
    const auto report = run_pipeline(cfg);
    std::ostringstream tag;
    tag << "desk_theta_" << theta;
    for (auto [format, ext] : {std::pair{ReportFormat::csv, ".csv"}, {ReportFormat::json, ".json"}}) {
      const auto path = out_dir / (tag.str() + ext);
      std::ofstream f(path);
      emit_report(report, format, f);
      produced = produced && f.good();
    }
    std::size_t ok = 0, hyp = 0, verified = 0, violations = 0;
    for (const auto &r : report.records) {
      ok += r.status == "ok";
      hyp += r.isolation_within_eps;
      verified += r.primal_verified;
      violations += r.primal_violation_found;
    }
    produced = produced && report.records.size() == 20 * default_kappa0_grid(cfg.eps).size();
    os << "theta=" << theta << ": " << report.records.size() << " rows, " << ok << " ok, " << hyp
       << " within eps, " << verified << " verified, " << violations << " violations, median retention";
    for (const auto &s : report.summary)
      os << ' ' << s.kappa0.str() << ':'
         << (s.primal_retention ? s.primal_retention->median.str() : std::string("-"));
    os << "; ";
  }
  const double secs = seconds_since(t0);
  os << secs << " s, reports in " << out_dir.string();
  return {produced && secs <= 1800, os.str()};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  std::string out_dir = ".";
  app.add_option("--only", only, "criteria to run");
  app.add_option("--out-dir", out_dir, "where the desk-scale reports go");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      cheeger_matches_brute_force, definition_equivalence, strengthening_lemma, peeling_theorem,
      transfer_theorem,            map_invariants,         sampler_histogram,
      [&] { return desk_pipeline(out_dir); }};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
      continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
              << ")" << std::endl;
  }
  return all ? 0 : 1;
}
