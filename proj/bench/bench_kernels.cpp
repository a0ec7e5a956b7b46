// Serial reference paths against their OpenMP counterparts.

#include "expander/cheeger.hpp"
#include "expander/harness.hpp"
#include "expander/kernels.hpp"
#include "expander/maps.hpp"
#include "expander/sampler.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

using namespace expander;
using kernels::Exec;

namespace {

Multigraph sampled_dual(int n, std::uint64_t seed) {
  return underlying_graph(dual(sample_gluing(n, seed))).graph;
}

// Best of `reps` wall-clock times, in milliseconds.
double time_ms(int reps, const std::function<void()> &fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
  }
  return best;
}

template <class Result>
void compare(const char *name, const char *size, int reps,
             const std::function<Result(Exec)> &kernel) {
  Result serial{}, parallel{};
  const double ts = time_ms(reps, [&] { serial = kernel(Exec::serial); });
  const double tp = time_ms(reps, [&] { parallel = kernel(Exec::parallel); });
  std::printf("%-18s %-22s %10.2f %10.2f %8.2fx  %s\n", name, size, ts, tp, ts / tp,
              serial == parallel ? "same" : "DIFFERENT");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  int reps = 3;
  int threads = 0;
  app.add_option("--reps", reps, "repetitions, best time kept")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the default)");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0)
    omp_set_num_threads(threads);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-18s %-22s %10s %10s %9s  %s\n", "kernel", "input", "serial ms", "parallel ms",
              "speedup", "results");

  for (int n : {14, 17}) {
    const auto g = sampled_dual(n, 1);
    const std::string size = std::to_string(g.vertex_count()) + " vertices";
    compare<Rational>("enumeration", size.c_str(), reps, [&](Exec e) {
      return cheeger_exact(g, OracleOptions{g.vertex_count(), e}).value;
    });
  }

  for (int n : {1000, 4000}) {
    const auto g = sampled_dual(n, 2);
    const std::string size = std::to_string(g.vertex_count()) + " vertices";
    compare<std::vector<std::size_t>>("ball growing", size.c_str(), reps, [&](Exec e) {
      std::vector<std::size_t> prefixes;
      for (const auto &b : kernels::grow_balls(g, Rational(1, 4), {}, e))
        prefixes.push_back(b.best_prefix);
      return prefixes;
    });
  }

  for (int n : {20000, 100000}) {
    const auto g = sampled_dual(n, 3);
    const std::string size = std::to_string(g.vertex_count()) + " vertices";
    compare<std::vector<double>>("power iteration", size.c_str(), reps, [&](Exec e) {
      return kernels::spectral_embedding(g, 300, 7, e);
    });
  }

  {
    PipelineConfig cfg;
    cfg.n = 120;
    cfg.trials = 8;
    cfg.theta = 0.1;
    cfg.kappa0 = {Rational(1, 8)};
    compare<std::vector<std::string>>("pipeline trials", "n=120, 8 trials", 1, [&](Exec e) {
      cfg.exec = e;
      std::vector<std::string> rows;
      for (const auto &r : run_pipeline(cfg).records)
        rows.push_back(r.primal_retention.str() + r.status);
      return rows;
    });
  }
  return 0;
}
