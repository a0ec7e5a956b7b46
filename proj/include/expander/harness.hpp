#pragma once

// End-to-end pipeline: sample a triangulation T, dualize, measure how much
// of T* is strongly isolated, peel T* with kappa0^2, and transfer the
// resulting expander back to T. One record per (trial, kappa0).

#include "expander/cheeger.hpp"
#include "expander/peeling.hpp"
#include "expander/rational.hpp"
#include "expander/sampler.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace expander {

/// (1 - 2 eps)/3 and 1 - 4 eps, whichever is smaller.
Rational kappa0_cap(const Rational &eps);
/// 1/4, 1/8, 1/16, 1/32 restricted to (0, cap].
std::vector<Rational> default_kappa0_grid(const Rational &eps);

struct PipelineConfig {
  int n = 8;
  std::optional<double> theta;
  std::optional<int> genus;
  /// Empty means the default grid.
  std::vector<Rational> kappa0;
  Rational eps{1, 10};
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::combined;
  int trials = 1;
  /// Ball-growing sources probed when isolation cannot be computed exactly.
  std::size_t budget = 100000;
  std::size_t exact_cap = kDefaultEnumerationCap;
  std::size_t max_ball = 0;
  SampleMethod sample_method = SampleMethod::automatic;
  long long max_attempts = 100000;
  int chain_sweeps = 20;
  /// Keep the removed sets and final sets in the records.
  bool keep_certificates = false;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Throws ConfigError for any out-of-range field.
void validate(const PipelineConfig &cfg);
/// The target genus, if any (theta resolved to round(theta n)).
std::optional<int> target_genus(const PipelineConfig &cfg);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  Rational kappa0;
  Rational eps;
  /// (1 - eps) kappa0^2, the expansion certified on the dual remainder.
  Rational kappa_eps;
  /// kappa_eps / 24, the expansion claimed for the primal subgraph.
  Rational final_bound;
  /// "ok" or the error kind.
  std::string status = "ok";
  std::string error;

  int n = 0;
  int genus = 0;
  std::string sample_method;
  long long sample_attempts = 0;
  std::int64_t primal_vertices = 0;
  std::int64_t primal_edges = 0;
  int face_degree_bound = 0;

  /// vol(Isol+_kappa0(T*)): exact, or a lower bound from heuristics.
  std::int64_t isolated_volume = 0;
  bool isolation_exact = false;
  /// vol(Isol+) <= 3 eps n, the hypothesis the peeling analysis relies on.
  bool isolation_within_eps = false;

  std::int64_t peel_steps = 0;
  std::int64_t dual_vertices_retained = 0;
  std::int64_t dual_edges_retained = 0;
  Rational dual_retention;
  /// The dual remainder is a kappa_eps-expander by exhaustive search.
  bool dual_certified = false;

  std::int64_t subgraph_vertices = 0;
  std::int64_t subgraph_edges = 0;
  Rational primal_retention;
  bool subgraph_induced = false;
  /// h(G) >= final_bound checked exhaustively.
  bool primal_verified = false;
  /// A heuristic found a set of G below final_bound.
  bool primal_violation_found = false;
  /// Every decision in this row was exact.
  bool exact = false;

  std::optional<PeelingTrace> trace;
  std::optional<VertexSet> subgraph_vertex_set;
};

struct Quantiles {
  Rational min, q25, median, q75, max;
};

struct KappaSummary {
  Rational kappa0;
  std::int64_t rows = 0;
  std::int64_t ok = 0;
  std::int64_t hypothesis_rows = 0;
  std::optional<Quantiles> primal_retention;
  std::optional<Quantiles> dual_retention;
};

struct PipelineReport {
  PipelineConfig config;
  std::vector<TrialRecord> records;
  std::vector<KappaSummary> summary;
};

/// Nearest-rank quantiles of a nonempty list: element floor(q (k - 1)) of
/// the sorted values.
Quantiles quantiles(std::vector<Rational> values);

struct IsolationEstimate {
  std::int64_t volume = 0;
  VertexSet vertices;
  bool exact = false;
  std::size_t sources_probed = 0;
};

/// vol of the union of (strong) kappa-bad sets. Exact within the cap;
/// otherwise the union of those found by ball growing from up to `budget`
/// sources plus a spectral sweep, so a lower bound.
IsolationEstimate estimate_isolated_volume(const Multigraph &g, const Rational &kappa,
                                           std::size_t budget, bool strong,
                                           const OracleOptions &opts = {});

/// Runs all trials; trials run in parallel and are merged in order. Errors
/// inside a trial are recorded on its rows, never thrown. Throws
/// ConfigError for a bad configuration.
PipelineReport run_pipeline(const PipelineConfig &cfg);

std::vector<KappaSummary> summarize(const std::vector<Rational> &kappas,
                                    const std::vector<TrialRecord> &records);

enum class ReportFormat { json, csv };
ReportFormat parse_report_format(const std::string &name);

/// Column order of the CSV (and key order of the JSON rows).
const std::vector<std::string> &report_columns();
void emit_report(const PipelineReport &report, ReportFormat format, std::ostream &out);

} // namespace expander
