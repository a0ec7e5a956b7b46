#pragma once

// Random triangulations from uniform gluings of 2n triangles. Dart 3t+i is
// side i of triangle t, phi cycles (3t, 3t+1, 3t+2), and a uniform perfect
// matching of the 6n darts is the edge involution alpha; sigma = phi o alpha.

#include "expander/kernels.hpp"
#include "expander/maps.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace expander {

enum class SampleMethod {
  rejection,    ///< redraw whole gluings until the genus matches
  switch_chain, ///< genus-preserving edge-switch Markov chain
  automatic,    ///< rejection with a small attempt budget, then the chain
};

const char *to_string(SampleMethod m);
SampleMethod parse_sample_method(const std::string &name);

struct GluingConfig {
  int n = 1;
  std::optional<int> target_genus;
  std::uint64_t seed = 0;
  long long max_attempts = 100000;
  SampleMethod method = SampleMethod::rejection;
  /// Chain length in units of 3n proposals, after the genus is reached.
  int chain_sweeps = 20;
};

struct SampledTriangulation {
  CombinatorialMap map;
  int genus = 0;
  SampleMethod method_used = SampleMethod::rejection;
  long long attempts = 0;
};

/// A triangulation on 2n faces of genus g exists iff n >= 2g - 1.
bool genus_feasible(int n, int genus);
/// round(theta n), for theta in (0, 1/2).
int genus_for_theta(int n, double theta);

/// Uniform connected gluing of 2n triangles, rooted at dart 0. Disconnected
/// gluings are redrawn whole; throws SamplingError after `max_attempts`.
CombinatorialMap sample_gluing(int n, std::uint64_t seed, long long max_attempts = 1000000);

/// The gluing model conditioned on genus. Rejection draws are exact for that
/// distribution; the switch chain targets the same (uniform over labelled
/// connected gluings of the genus) as its stationary law.
SampledTriangulation draw_triangulation(const GluingConfig &cfg);
CombinatorialMap sample_triangulation(const GluingConfig &cfg);

/// Genus counts over `trials` connected gluings; draw i uses stream i of
/// `seed`, so the result is independent of scheduling.
std::map<int, long long> genus_histogram(int n, long long trials, std::uint64_t seed,
                                         kernels::Exec exec = kernels::Exec::parallel);

} // namespace expander
