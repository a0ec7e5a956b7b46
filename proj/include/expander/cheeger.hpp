#pragma once

// Exact, exponential-time oracles: Cheeger constant, bad sets, isolated
// vertices, and the strong-bad-set construction. Everything is decided with
// integer cross-multiplication; `kappa` is always a Rational.

#include "expander/kernels.hpp"
#include "expander/multigraph.hpp"
#include "expander/rational.hpp"

#include <optional>
#include <vector>

namespace expander {

inline constexpr std::size_t kDefaultEnumerationCap = 16;

struct OracleOptions {
  /// Exact oracles refuse graphs with more vertices than this.
  std::size_t cap = kDefaultEnumerationCap;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// A connected set with at most half the volume and ratio strictly below
/// `kappa`; `strong` records whether its complement is connected too.
struct BadSetCertificate {
  VertexSet set;
  CutReport report;
  bool strong = false;
  Rational kappa;
};

/// h(G) with one minimizing set. `unbounded` means no nonempty set of
/// positive volume fits under half the total volume (e.g. one vertex with
/// loops), so the infimum is over an empty family and every kappa passes.
struct CheegerResult {
  bool unbounded = false;
  Rational value;
  VertexSet argmin;

  bool at_least(const Rational &kappa) const { return unbounded || value >= kappa; }
};

/// Minimum of boundary/volume over sets with vol <= vol(G)/2. Only connected
/// sets are enumerated; a disconnected minimizer always has a connected
/// component that is at least as good. Ties: smaller volume, then the
/// lexicographically smaller member list. Throws DegenerateError for an
/// edgeless graph and CapacityError above the cap.
CheegerResult cheeger_exact(const Multigraph &g, const OracleOptions &opts = {});

/// h(G) >= kappa. Edgeless graphs are expanders vacuously.
bool is_expander(const Multigraph &g, const Rational &kappa, const OracleOptions &opts = {});

bool is_bad_set(const Multigraph &g, const VertexSet &x, const Rational &kappa);
bool is_strong_bad_set(const Multigraph &g, const VertexSet &x, const Rational &kappa);

/// Certificate for `x`, or nullopt when `x` is not kappa-bad.
std::optional<BadSetCertificate> certify_bad_set(const Multigraph &g, const VertexSet &x,
                                                 const Rational &kappa);

/// Union of all kappa-bad sets.
VertexSet isolated_vertices_exact(const Multigraph &g, const Rational &kappa,
                                  const OracleOptions &opts = {});
/// Union of all strong kappa-bad sets.
VertexSet strongly_isolated_vertices_exact(const Multigraph &g, const Rational &kappa,
                                           const OracleOptions &opts = {});

/// Every kappa-bad set (strong only, if asked), in canonical enumeration order.
std::vector<BadSetCertificate> bad_sets_exact(const Multigraph &g, const Rational &kappa,
                                              bool strong_only, const OracleOptions &opts = {});

/// For each vertex, the best kappa-bad set containing it, if any.
std::vector<std::optional<BadSetCertificate>>
isolation_witnesses(const Multigraph &g, const Rational &kappa, bool strong_only,
                    const OracleOptions &opts = {});

/// kappa < min((1 - 2 eps)/3, 1 - 4 eps).
bool strengthening_range_holds(const Rational &kappa, const Rational &eps);

/// The range condition plus vol(Isol+_kappa(G)) <= eps vol(G), decided exactly.
bool strengthening_hypotheses_hold(const Multigraph &g, const Rational &kappa,
                                   const Rational &eps, const OracleOptions &opts = {});

/// Turns a kappa^2-bad set `x` into a strong kappa-bad set containing it:
/// adds every component of G - x except the one of largest volume. The
/// result is validated; if any strong-bad clause fails (which the hypotheses
/// rule out) a ConstructionError naming the clause is thrown. The
/// hypotheses themselves are not checked here.
BadSetCertificate strengthen_bad_set(const Multigraph &g, const VertexSet &x,
                                     const Rational &kappa, const Rational &eps);

} // namespace expander
