#pragma once

// Repeated removal of bad sets: starting from G, while the current induced
// subgraph has a (1 - eps) kappa -bad set, remove it. What is left is an
// induced subgraph that is a (1 - eps) kappa -expander, or nothing.

#include "expander/cheeger.hpp"
#include "expander/kernels.hpp"
#include "expander/multigraph.hpp"
#include "expander/random.hpp"
#include "expander/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace expander {

enum class Strategy {
  exact,        ///< exhaustive, complete; needs the enumeration cap
  ball_growing, ///< best bad BFS ball over all sources
  sweep,        ///< spectral sweep over prefix components
  combined,     ///< best of ball_growing and sweep
};

const char *to_string(Strategy s);
/// Throws ArgumentError for unknown names.
Strategy parse_strategy(const std::string &name);

struct FindOptions {
  Strategy strategy = Strategy::exact;
  /// Heuristic strategies switch to the exact search on graphs this small.
  bool exact_within_cap = false;
  std::size_t exact_cap = kDefaultEnumerationCap;
  /// Ball size limit in vertices for ball_growing; 0 is unbounded.
  std::size_t max_ball = 0;
  int power_iterations = 300;
  std::uint64_t spectral_seed = 0x5EED;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Looks for a kappa-bad set. The exact strategy returns the best set in the
/// canonical order (ratio, volume, members), or, when `rng` is given, a
/// uniformly random bad set; it returns nullopt only if none exists.
/// Heuristics may miss. Throws DegenerateError on an edgeless graph.
std::optional<BadSetCertificate> find_bad_set(const Multigraph &g, const Rational &kappa,
                                              const FindOptions &opts = {}, Rng *rng = nullptr);

struct PeelStep {
  /// Removed set, in vertex indices of the input graph.
  VertexSet set;
  /// Cut of the removed set measured in the graph it was removed from.
  CutReport report;
  bool strong = false;
  /// Edge count after the removal.
  std::int64_t edges_remaining = 0;
};

struct PeelingTrace {
  Rational kappa_eps;
  std::vector<PeelStep> steps;
  /// Vertices of the final graph; empty when the process ran out of edges.
  VertexSet final_set;
  /// Edgeless leftovers dropped when no edge remained.
  VertexSet stranded;
};

struct PeelOptions {
  FindOptions find;
  /// When set, the exact strategy picks uniformly among all bad sets.
  std::optional<std::uint64_t> random_seed;
};

struct PeelResult {
  InducedSubgraph remainder;
  PeelingTrace trace;
  /// The final graph is certified by an exhaustive search (or is empty).
  bool certified = false;
};

/// Runs the process with kappa_eps = (1 - eps) kappa on a connected graph.
/// Requires 0 < eps < 1/2 and kappa > 0 (ArgumentError otherwise).
PeelResult peel(const Multigraph &g, const Rational &kappa, const Rational &eps,
                const PeelOptions &opts = {});

struct ComponentPeel {
  VertexSet component;
  /// In the component's local indices.
  PeelResult result;
};

/// Peels each connected component on its own, thresholds local to it.
std::vector<ComponentPeel> peel_each_component(const Multigraph &g, const Rational &kappa,
                                               const Rational &eps, const PeelOptions &opts = {});

struct PeelVerdict {
  bool ok = true;
  std::optional<std::size_t> failed_step;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Replays a trace: every removed set must be a kappa_eps-bad set of the
/// graph it was removed from with matching cut numbers, and the final graph
/// must be a kappa_eps-expander when small enough to check exactly.
/// Structurally malformed traces throw ValidationError.
PeelVerdict verify_peel(const Multigraph &g, const PeelingTrace &trace, const Rational &kappa,
                        const Rational &eps, const OracleOptions &opts = {});

/// Every removed vertex is kappa_eps-isolated in the input graph.
bool check_removed_are_isolated(const Multigraph &g, const PeelingTrace &trace,
                                const Rational &kappa_eps, const OracleOptions &opts = {});

} // namespace expander
