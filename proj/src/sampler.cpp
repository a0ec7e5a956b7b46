#include "expander/sampler.hpp"

#include "expander/errors.hpp"
#include "expander/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace expander {

const char *to_string(SampleMethod m) {
  switch (m) {
  case SampleMethod::rejection:
    return "rejection";
  case SampleMethod::switch_chain:
    return "switch_chain";
  case SampleMethod::automatic:
    return "automatic";
  }
  return "?";
}

SampleMethod parse_sample_method(const std::string &name) {
  for (SampleMethod m :
       {SampleMethod::rejection, SampleMethod::switch_chain, SampleMethod::automatic})
    if (name == to_string(m))
      return m;
  throw ArgumentError("unknown sampling method '" + name + "'");
}

bool genus_feasible(int n, int genus) { return n >= 1 && genus >= 0 && n >= 2 * genus - 1; }

int genus_for_theta(int n, double theta) {
  if (!(theta > 0.0 && theta < 0.5))
    throw ConfigError("theta must lie in (0, 1/2)");
  return static_cast<int>(std::lround(theta * n));
}

namespace {

inline Dart triangle_next(Dart d) { return d % 3 == 2 ? d - 2 : d + 1; }

/// Gluing of 2n triangles under modification by edge switches.
class Gluing {
public:
  explicit Gluing(int n) : n_(n), darts_(static_cast<std::size_t>(6 * n)), alpha_(darts_), stamp_(darts_, 0) {}

  void draw(Rng &rng) {
    std::vector<Dart> order(darts_);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<Dart>(order));
    for (std::size_t i = 0; i < darts_; i += 2) {
      alpha_[static_cast<std::size_t>(order[i])] = order[i + 1];
      alpha_[static_cast<std::size_t>(order[i + 1])] = order[i];
    }
  }

  Dart alpha(Dart d) const { return alpha_[static_cast<std::size_t>(d)]; }
  Dart sigma(Dart d) const { return triangle_next(alpha(d)); }

  bool connected() {
    const unsigned gen = ++generation_;
    std::vector<Dart> stack{0};
    stamp_[0] = gen;
    std::size_t reached = 0;
    while (!stack.empty()) {
      Dart d = stack.back();
      stack.pop_back();
      ++reached;
      for (Dart next : {alpha(d), triangle_next(d)})
        if (stamp_[static_cast<std::size_t>(next)] != gen) {
          stamp_[static_cast<std::size_t>(next)] = gen;
          stack.push_back(next);
        }
    }
    return reached == darts_;
  }

  int vertex_count() {
    const unsigned gen = ++generation_;
    int count = 0;
    for (std::size_t d = 0; d < darts_; ++d) {
      if (stamp_[d] == gen)
        continue;
      ++count;
      for (auto x = static_cast<Dart>(d); stamp_[static_cast<std::size_t>(x)] != gen; x = sigma(x))
        stamp_[static_cast<std::size_t>(x)] = gen;
    }
    return count;
  }

  int genus_for(int vertices) const { return (n_ + 2 - vertices) / 2; }

  /// Number of distinct sigma-cycles through the given darts.
  int cycles_through(std::initializer_list<Dart> darts) {
    const unsigned gen = ++generation_;
    int count = 0;
    for (Dart d : darts) {
      if (stamp_[static_cast<std::size_t>(d)] == gen)
        continue;
      ++count;
      for (Dart x = d; stamp_[static_cast<std::size_t>(x)] != gen; x = sigma(x))
        stamp_[static_cast<std::size_t>(x)] = gen;
    }
    return count;
  }

  std::vector<Dart> vertex_of(Dart d) const {
    std::vector<Dart> out{d};
    for (Dart x = sigma(d); x != d; x = sigma(x))
      out.push_back(x);
    return out;
  }

  /// Re-pairs {a, alpha a}, {c, alpha c} as {a, c}, {alpha a, alpha c}.
  /// Returns the change in vertex count. The move is its own inverse when
  /// applied to the new pairs {a, alpha a = c'} etc., see `undo`.
  int switch_pairs(Dart a, Dart c) {
    const Dart b = alpha(a);
    const Dart d = alpha(c);
    const int before = cycles_through({a, b, c, d});
    pair(a, c);
    pair(b, d);
    return cycles_through({a, b, c, d}) - before;
  }

  void pair(Dart x, Dart y) {
    alpha_[static_cast<std::size_t>(x)] = y;
    alpha_[static_cast<std::size_t>(y)] = x;
  }

  CombinatorialMap to_map() const {
    CombinatorialMap m;
    m.dart_count = darts_;
    m.alpha = alpha_;
    m.sigma.resize(darts_);
    for (std::size_t d = 0; d < darts_; ++d)
      m.sigma[d] = sigma(static_cast<Dart>(d));
    m.root = 0;
    return m;
  }

  std::size_t darts() const { return darts_; }

private:
  int n_;
  std::size_t darts_;
  std::vector<Dart> alpha_;
  std::vector<unsigned> stamp_;
  unsigned generation_ = 0;
};

void check_n(int n) {
  if (n < 1)
    throw ConfigError("number of triangle pairs must be at least 1, got " + std::to_string(n));
}

/// Draws connected gluings until one is found; returns attempts used.
long long draw_connected(Gluing &gl, Rng &rng, long long max_attempts) {
  for (long long attempt = 1; attempt <= max_attempts; ++attempt) {
    gl.draw(rng);
    if (gl.connected())
      return attempt;
  }
  throw SamplingError("no connected gluing in " + std::to_string(max_attempts) + " attempts", {});
}

SampledTriangulation run_rejection(const GluingConfig &cfg, Rng &rng, long long budget) {
  Gluing gl(cfg.n);
  std::map<int, long long> histogram;
  long long attempts = 0;
  while (attempts < budget) {
    attempts += draw_connected(gl, rng, budget - attempts);
    const int genus = gl.genus_for(gl.vertex_count());
    histogram[genus]++;
    if (genus == *cfg.target_genus)
      return {gl.to_map(), genus, SampleMethod::rejection, attempts};
  }
  throw SamplingError("genus " + std::to_string(*cfg.target_genus) + " not reached in " +
                          std::to_string(budget) + " attempts",
                      histogram);
}

SampledTriangulation run_chain(const GluingConfig &cfg, Rng &rng) {
  Gluing gl(cfg.n);
  long long attempts = draw_connected(gl, rng, cfg.max_attempts);
  const int target_vertices = cfg.n + 2 - 2 * *cfg.target_genus;
  int vertices = gl.vertex_count();
  const auto darts = static_cast<std::uint64_t>(gl.darts());

  // Descent: move the vertex count toward the target. Splitting proposals
  // pick both darts on one vertex; merging proposals pick them anywhere.
  const long long descent_limit = 2000LL * static_cast<long long>(darts) + 100000;
  for (long long step = 0; vertices != target_vertices; ++step) {
    if (step > descent_limit)
      throw SamplingError("switch chain did not reach genus " +
                              std::to_string(*cfg.target_genus),
                          {{gl.genus_for(vertices), 1}});
    const bool split = vertices < target_vertices;
    const auto a = static_cast<Dart>(rng.below(darts));
    Dart c;
    if (split) {
      const auto around = gl.vertex_of(a);
      if (around.size() < 2)
        continue;
      c = around[rng.below(around.size())];
    } else {
      c = static_cast<Dart>(rng.below(darts));
    }
    if (c == a || c == gl.alpha(a))
      continue;
    // Two re-pairings: {a,c}{a',c'} and {a,c'}{a',c}.
    if (rng.below(2))
      c = gl.alpha(c);
    const Dart a2 = gl.alpha(a);
    const Dart c2 = gl.alpha(c);
    const int delta = gl.switch_pairs(a, c);
    const int next = vertices + delta;
    // A split needs two parallel edges, which become rare as the graph
    // thins out; neutral moves keep the walk going until one appears.
    const bool closer = split ? (delta > 0 && next <= target_vertices)
                              : (delta < 0 && next >= target_vertices);
    if ((closer || delta == 0) && gl.connected()) {
      vertices = next;
    } else {
      gl.pair(a, a2);
      gl.pair(c, c2);
    }
    ++attempts;
  }

  // Mixing on the genus slice: symmetric proposals, accept iff the vertex
  // count is unchanged and the gluing stays connected.
  const long long proposals = static_cast<long long>(cfg.chain_sweeps) * 3LL * cfg.n;
  for (long long step = 0; step < proposals; ++step) {
    const auto a = static_cast<Dart>(rng.below(darts));
    auto c = static_cast<Dart>(rng.below(darts));
    const bool flip = rng.below(2) != 0;
    if (c == a || c == gl.alpha(a))
      continue;
    if (flip)
      c = gl.alpha(c);
    const Dart a2 = gl.alpha(a);
    const Dart c2 = gl.alpha(c);
    if (gl.switch_pairs(a, c) != 0 || !gl.connected()) {
      gl.pair(a, a2);
      gl.pair(c, c2);
    }
  }
  return {gl.to_map(), *cfg.target_genus, SampleMethod::switch_chain, attempts};
}

} // namespace

CombinatorialMap sample_gluing(int n, std::uint64_t seed, long long max_attempts) {
  check_n(n);
  Rng rng(seed);
  Gluing gl(n);
  draw_connected(gl, rng, max_attempts);
  return gl.to_map();
}

SampledTriangulation draw_triangulation(const GluingConfig &cfg) {
  check_n(cfg.n);
  Rng rng(cfg.seed);
  if (!cfg.target_genus) {
    Gluing gl(cfg.n);
    const long long attempts = draw_connected(gl, rng, cfg.max_attempts);
    return {gl.to_map(), gl.genus_for(gl.vertex_count()), SampleMethod::rejection, attempts};
  }
  if (!genus_feasible(cfg.n, *cfg.target_genus))
    throw ConfigError("no triangulation with " + std::to_string(2 * cfg.n) + " faces has genus " +
                      std::to_string(*cfg.target_genus) + " (needs n >= 2g - 1)");
  switch (cfg.method) {
  case SampleMethod::rejection:
    return run_rejection(cfg, rng, cfg.max_attempts);
  case SampleMethod::switch_chain:
    return run_chain(cfg, rng);
  case SampleMethod::automatic:
    try {
      return run_rejection(cfg, rng, std::min<long long>(cfg.max_attempts, 2000));
    } catch (const SamplingError &) {
      return run_chain(cfg, rng);
    }
  }
  throw ConfigError("unknown sampling method");
}

CombinatorialMap sample_triangulation(const GluingConfig &cfg) {
  return draw_triangulation(cfg).map;
}

std::map<int, long long> genus_histogram(int n, long long trials, std::uint64_t seed,
                                         kernels::Exec exec) {
  check_n(n);
  if (trials < 1)
    throw ConfigError("genus histogram needs at least one trial");
  const int max_genus = (n + 1) / 2;
  std::vector<long long> counts(static_cast<std::size_t>(max_genus + 1), 0);
  auto draw_one = [n, seed](long long i, Gluing &gl) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    draw_connected(gl, rng, 1000000);
    return gl.genus_for(gl.vertex_count());
  };
  if (exec == kernels::Exec::serial) {
    Gluing gl(n);
    for (long long i = 0; i < trials; ++i)
      counts[static_cast<std::size_t>(draw_one(i, gl))]++;
  } else {
#pragma omp parallel
    {
      Gluing gl(n);
      std::vector<long long> local(counts.size(), 0);
#pragma omp for schedule(static)
      for (long long i = 0; i < trials; ++i)
        local[static_cast<std::size_t>(draw_one(i, gl))]++;
#pragma omp critical
      for (std::size_t g = 0; g < counts.size(); ++g)
        counts[g] += local[g];
    }
  }
  std::map<int, long long> out;
  for (std::size_t g = 0; g < counts.size(); ++g)
    if (counts[g] > 0)
      out[static_cast<int>(g)] = counts[g];
  return out;
}

} // namespace expander
