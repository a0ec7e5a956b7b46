#include "expander/harness.hpp"

#include "expander/duality.hpp"
#include "expander/errors.hpp"
#include "expander/io.hpp"
#include "expander/maps.hpp"

#include <algorithm>
#include <ostream>

namespace expander {

Rational kappa0_cap(const Rational &eps) {
  return std::min((Rational(1) - Rational(2) * eps) / Rational(3), Rational(1) - Rational(4) * eps);
}

std::vector<Rational> default_kappa0_grid(const Rational &eps) {
  const Rational cap = kappa0_cap(eps);
  std::vector<Rational> out;
  for (int d : {4, 8, 16, 32})
    if (Rational(1, d) <= cap)
      out.emplace_back(1, d);
  return out;
}

std::optional<int> target_genus(const PipelineConfig &cfg) {
  if (cfg.genus)
    return cfg.genus;
  if (cfg.theta)
    return genus_for_theta(cfg.n, *cfg.theta);
  return std::nullopt;
}

namespace {

std::vector<Rational> kappa_grid(const PipelineConfig &cfg) {
  return cfg.kappa0.empty() ? default_kappa0_grid(cfg.eps) : cfg.kappa0;
}

} // namespace

void validate(const PipelineConfig &cfg) {
  if (cfg.n < 1)
    throw ConfigError("n must be at least 1");
  if (!(cfg.eps > Rational(0)) || !(cfg.eps < Rational(1, 2)))
    throw ConfigError("eps must satisfy 0 < eps < 1/2, got " + cfg.eps.str());
  if (cfg.trials < 1)
    throw ConfigError("trials must be at least 1");
  if (cfg.theta && cfg.genus)
    throw ConfigError("give theta or genus, not both");
  if (cfg.max_attempts < 1 || cfg.chain_sweeps < 0)
    throw ConfigError("sampler budgets must be positive");
  if (auto g = target_genus(cfg); g && !genus_feasible(cfg.n, *g))
    throw ConfigError("no triangulation with " + std::to_string(2 * cfg.n) +
                      " faces has genus " + std::to_string(*g));
  const Rational cap = kappa0_cap(cfg.eps);
  const auto grid = kappa_grid(cfg);
  if (grid.empty())
    throw ConfigError("no kappa0 in the default grid is at most " + cap.str());
  for (const Rational &k : grid) {
    if (!(k > Rational(0)))
      throw ConfigError("kappa0 must be positive, got " + k.str());
    if (k > cap)
      throw ConfigError("kappa0 " + k.str() + " exceeds min((1-2eps)/3, 1-4eps) = " + cap.str());
  }
}

Quantiles quantiles(std::vector<Rational> values) {
  if (values.empty())
    throw ArgumentError("quantiles of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t last = values.size() - 1;
  auto at = [&](std::size_t num, std::size_t den) { return values[num * last / den]; };
  return {values.front(), at(1, 4), at(1, 2), at(3, 4), values.back()};
}

IsolationEstimate estimate_isolated_volume(const Multigraph &g, const Rational &kappa,
                                           std::size_t budget, bool strong,
                                           const OracleOptions &opts) {
  const std::size_t n = g.vertex_count();
  IsolationEstimate est;
  est.vertices = VertexSet::none(n);
  if (g.edge_count() == 0) {
    est.exact = true;
    return est;
  }
  if (n <= opts.cap) {
    est.vertices = strong ? strongly_isolated_vertices_exact(g, kappa, opts)
                          : isolated_vertices_exact(g, kappa, opts);
    est.volume = volume(g, est.vertices);
    est.exact = true;
    return est;
  }
  if (budget == 0)
    return est;

  std::vector<char> found(n, 0);
  // A bad prefix X is closed up as in the strengthening construction: add
  // every component of G - X except the largest (or keep only that one). Only genuine (strong) bad
  // sets are admitted, so the union stays a lower bound.
  auto admit = [&](std::vector<Vertex> members) {
    VertexSet x(n, std::move(members));
    if (strong) {
      const auto parts = connected_components(g, x.complement());
      for (std::size_t i = 1; i < parts.size(); ++i)
        x = x.unite(parts[i]);
      // Past half the volume, the other side has the same cut and fits.
      if (!parts.empty() && 2 * volume(g, x) > g.total_volume())
        x = parts.front();
    }
    auto cert = certify_bad_set(g, x, kappa);
    if (!cert || (strong && !cert->strong))
      return false;
    for (Vertex v : x)
      found[static_cast<std::size_t>(v)] = 1;
    return true;
  };

  kernels::BallOptions bo;
  bo.sources = std::min(n, budget);
  est.sources_probed = bo.sources;
  const auto balls = kernels::grow_balls(g, kappa, bo, opts.exec);
  constexpr std::size_t kMaxChecks = 8;
  for (const auto &ball : balls) {
    std::size_t checks = 0;
    for (auto it = ball.bad_prefixes.rbegin();
         it != ball.bad_prefixes.rend() && checks < kMaxChecks; ++it, ++checks) {
      if (!strong && checks > 0)
        break;
      if (admit(std::vector<Vertex>(ball.order.begin(),
                                    ball.order.begin() + static_cast<std::ptrdiff_t>(*it))))
        break;
    }
  }
  auto emb = kernels::spectral_embedding(g, 300, 0x5EED, opts.exec);
  if (auto c = kernels::sweep_cut(g, emb, kappa))
    admit(c->members);

  est.vertices = VertexSet::from_indicator(found);
  est.volume = volume(g, est.vertices);
  return est;
}

namespace {

struct Sample {
  CombinatorialMap map;
  int genus = 0;
  SampleMethod method = SampleMethod::rejection;
  long long attempts = 0;
};

Sample draw(const PipelineConfig &cfg, std::uint64_t seed) {
  if (auto g = target_genus(cfg)) {
    GluingConfig gc;
    gc.n = cfg.n;
    gc.target_genus = *g;
    gc.seed = seed;
    gc.max_attempts = cfg.max_attempts;
    gc.method = cfg.sample_method;
    gc.chain_sweeps = cfg.chain_sweeps;
    auto s = draw_triangulation(gc);
    return {std::move(s.map), s.genus, s.method_used, s.attempts};
  }
  Sample s;
  s.map = sample_gluing(cfg.n, seed, cfg.max_attempts);
  s.genus = validate(s.map).genus;
  s.attempts = 1;
  return s;
}

void fill_row(TrialRecord &row, const PipelineConfig &cfg, const Sample &sample,
              const Multigraph &dual_graph) {
  const OracleOptions oracle{cfg.exact_cap, cfg.exec};
  const std::int64_t edges_total = 3 * static_cast<std::int64_t>(cfg.n);

  const auto iso = estimate_isolated_volume(dual_graph, row.kappa0, cfg.budget, true, oracle);
  row.isolated_volume = iso.volume;
  row.isolation_exact = iso.exact;
  row.isolation_within_eps = Rational(iso.volume) <= cfg.eps * Rational(edges_total);

  PeelOptions po;
  po.find.strategy = cfg.strategy;
  po.find.exact_within_cap = true;
  po.find.exact_cap = cfg.exact_cap;
  po.find.max_ball = cfg.max_ball;
  po.find.exec = cfg.exec;
  const PeelResult peeled = peel(dual_graph, row.kappa0 * row.kappa0, cfg.eps, po);
  row.peel_steps = static_cast<std::int64_t>(peeled.trace.steps.size());
  row.dual_certified = peeled.certified;
  row.dual_vertices_retained = static_cast<std::int64_t>(peeled.trace.final_set.size());
  row.dual_edges_retained = static_cast<std::int64_t>(peeled.remainder.graph.edge_count());
  row.dual_retention = Rational(row.dual_edges_retained, edges_total);
  if (cfg.keep_certificates)
    row.trace = peeled.trace;

  bool primal_exact = true;
  if (!peeled.trace.final_set.empty()) {
    DualTransfer dt(DualTransferInstance{sample.map, peeled.trace.final_set, row.kappa_eps});
    const TransferResult tr = transfer_expander(dt, oracle);
    row.face_degree_bound = tr.face_degree_bound;
    row.final_bound = tr.bound;
    const Multigraph &g = tr.primal.graph;
    row.subgraph_vertices = static_cast<std::int64_t>(g.vertex_count());
    row.subgraph_edges = static_cast<std::int64_t>(g.edge_count());
    row.subgraph_induced = tr.primal.induced;
    row.primal_verified = tr.primal_verified;
    primal_exact = tr.primal_verified;
    if (!tr.primal_verified && g.edge_count() > 0) {
      FindOptions fo;
      fo.strategy = Strategy::combined;
      fo.exec = cfg.exec;
      row.primal_violation_found = find_bad_set(g, tr.bound, fo).has_value();
    }
    if (cfg.keep_certificates) {
      const auto n_map = static_cast<std::size_t>(row.primal_vertices);
      row.subgraph_vertex_set = VertexSet(n_map, tr.primal.to_map_vertex);
    }
  }
  row.primal_retention = Rational(row.subgraph_edges, edges_total);
  row.exact = iso.exact && peeled.certified && primal_exact;
}

const char *error_kind(const std::exception &e) {
  if (dynamic_cast<const CapacityError *>(&e))
    return "capacity";
  if (dynamic_cast<const SamplingError *>(&e))
    return "sampling";
  if (dynamic_cast<const TheoremViolation *>(&e))
    return "theorem_violation";
  if (dynamic_cast<const ConstructionError *>(&e))
    return "construction";
  if (dynamic_cast<const ConfigError *>(&e))
    return "config";
  if (dynamic_cast<const Error *>(&e))
    return "error";
  return "internal";
}

std::vector<TrialRecord> run_trial(const PipelineConfig &cfg, const std::vector<Rational> &grid,
                                   int trial) {
  std::vector<TrialRecord> rows(grid.size());
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    TrialRecord &r = rows[i];
    r.trial = trial;
    r.seed = seed;
    r.kappa0 = grid[i];
    r.eps = cfg.eps;
    r.kappa_eps = (Rational(1) - cfg.eps) * grid[i] * grid[i];
    r.final_bound = r.kappa_eps / Rational(24);
    r.n = cfg.n;
  }
  Sample sample;
  Multigraph dual_graph;
  try {
    sample = draw(cfg, seed);
    dual_graph = underlying_graph(dual(sample.map)).graph;
  } catch (const std::exception &e) {
    for (auto &r : rows) {
      r.status = error_kind(e);
      r.error = e.what();
    }
    return rows;
  }
  const MapSummary summary = validate(sample.map);
  for (auto &r : rows) {
    r.genus = sample.genus;
    r.sample_method = to_string(sample.method);
    r.sample_attempts = sample.attempts;
    r.primal_vertices = static_cast<std::int64_t>(summary.vertices);
    r.primal_edges = static_cast<std::int64_t>(summary.edges);
    r.face_degree_bound = max_face_degree(sample.map);
    try {
      fill_row(r, cfg, sample, dual_graph);
    } catch (const std::exception &e) {
      r.status = error_kind(e);
      r.error = e.what();
    }
  }
  return rows;
}

std::string csv_cell(const io::Json &v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + '"';
}

io::Json row_json(const TrialRecord &r) {
  io::Json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["kappa0"] = r.kappa0.str();
  j["eps"] = r.eps.str();
  j["kappa_eps"] = r.kappa_eps.str();
  j["final_bound"] = r.final_bound.str();
  j["status"] = r.status;
  j["n"] = r.n;
  j["genus"] = r.genus;
  j["sample_method"] = r.sample_method;
  j["sample_attempts"] = r.sample_attempts;
  j["primal_vertices"] = r.primal_vertices;
  j["primal_edges"] = r.primal_edges;
  j["face_degree_bound"] = r.face_degree_bound;
  j["isolated_volume"] = r.isolated_volume;
  j["isolation_exact"] = r.isolation_exact;
  j["isolation_within_eps"] = r.isolation_within_eps;
  j["peel_steps"] = r.peel_steps;
  j["dual_vertices_retained"] = r.dual_vertices_retained;
  j["dual_edges_retained"] = r.dual_edges_retained;
  j["dual_retention"] = r.dual_retention.str();
  j["dual_certified"] = r.dual_certified;
  j["subgraph_vertices"] = r.subgraph_vertices;
  j["subgraph_edges"] = r.subgraph_edges;
  j["primal_retention"] = r.primal_retention.str();
  j["subgraph_induced"] = r.subgraph_induced;
  j["primal_verified"] = r.primal_verified;
  j["primal_violation_found"] = r.primal_violation_found;
  j["exact"] = r.exact;
  j["error"] = r.error;
  return j;
}

io::Json quantiles_json(const std::optional<Quantiles> &q) {
  if (!q)
    return nullptr;
  io::Json j;
  j["min"] = q->min.str();
  j["q25"] = q->q25.str();
  j["median"] = q->median.str();
  j["q75"] = q->q75.str();
  j["max"] = q->max.str();
  return j;
}

} // namespace

std::vector<KappaSummary> summarize(const std::vector<Rational> &kappas,
                                    const std::vector<TrialRecord> &records) {
  std::vector<KappaSummary> out;
  for (const Rational &k : kappas) {
    KappaSummary s;
    s.kappa0 = k;
    std::vector<Rational> primal, dual_r;
    for (const TrialRecord &r : records) {
      if (r.kappa0 != k)
        continue;
      ++s.rows;
      if (r.status != "ok")
        continue;
      ++s.ok;
      s.hypothesis_rows += r.isolation_within_eps ? 1 : 0;
      primal.push_back(r.primal_retention);
      dual_r.push_back(r.dual_retention);
    }
    if (!primal.empty()) {
      s.primal_retention = quantiles(primal);
      s.dual_retention = quantiles(dual_r);
    }
    out.push_back(std::move(s));
  }
  return out;
}

PipelineReport run_pipeline(const PipelineConfig &cfg) {
  validate(cfg);
  const auto grid = kappa_grid(cfg);
  std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(cfg.trials));
  PipelineConfig inner = cfg;
  if (cfg.exec == kernels::Exec::parallel && cfg.trials > 1) {
    // Trial-level parallelism; kernels inside a trial run serially.
    inner.exec = kernels::Exec::serial;
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < cfg.trials; ++t)
      per_trial[static_cast<std::size_t>(t)] = run_trial(inner, grid, t);
  } else {
    for (int t = 0; t < cfg.trials; ++t)
      per_trial[static_cast<std::size_t>(t)] = run_trial(inner, grid, t);
  }
  PipelineReport report;
  report.config = cfg;
  for (auto &rows : per_trial)
    for (auto &r : rows)
      report.records.push_back(std::move(r));
  report.summary = summarize(grid, report.records);
  return report;
}

ReportFormat parse_report_format(const std::string &name) {
  if (name == "json")
    return ReportFormat::json;
  if (name == "csv")
    return ReportFormat::csv;
  throw ArgumentError("unknown format '" + name + "'");
}

const std::vector<std::string> &report_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> out;
    const io::Json row = row_json(TrialRecord{});
    for (const auto &item : row.items())
      out.push_back(item.key());
    return out;
  }();
  return columns;
}

void emit_report(const PipelineReport &report, ReportFormat format, std::ostream &out) {
  if (format == ReportFormat::csv) {
    const auto &cols = report_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const TrialRecord &r : report.records) {
      const io::Json j = row_json(r);
      bool first = true;
      for (const auto &item : j.items()) {
        out << (first ? "" : ",") << csv_cell(item.value());
        first = false;
      }
      out << '\n';
    }
    return;
  }

  const PipelineConfig &cfg = report.config;
  io::Json j;
  io::Json c;
  c["n"] = cfg.n;
  c["theta"] = cfg.theta ? io::Json(*cfg.theta) : io::Json(nullptr);
  c["genus"] = cfg.genus ? io::Json(*cfg.genus) : io::Json(nullptr);
  io::Json kappas = io::Json::array();
  for (const Rational &k : cfg.kappa0.empty() ? default_kappa0_grid(cfg.eps) : cfg.kappa0)
    kappas.push_back(k.str());
  c["kappa0"] = std::move(kappas);
  c["eps"] = cfg.eps.str();
  c["seed"] = cfg.seed;
  c["strategy"] = to_string(cfg.strategy);
  c["trials"] = cfg.trials;
  c["budget"] = cfg.budget;
  c["exact_cap"] = cfg.exact_cap;
  c["sample_method"] = to_string(cfg.sample_method);
  j["config"] = std::move(c);
  io::Json rows = io::Json::array();
  for (const TrialRecord &r : report.records) {
    io::Json row = row_json(r);
    if (r.trace)
      row["trace"] = io::to_json(*r.trace);
    if (r.subgraph_vertex_set)
      row["subgraph_vertices_in_map"] = io::vertex_list(*r.subgraph_vertex_set);
    rows.push_back(std::move(row));
  }
  j["records"] = std::move(rows);
  io::Json summary = io::Json::array();
  for (const KappaSummary &s : report.summary) {
    io::Json e;
    e["kappa0"] = s.kappa0.str();
    e["rows"] = s.rows;
    e["ok"] = s.ok;
    e["hypothesis_rows"] = s.hypothesis_rows;
    e["primal_retention"] = quantiles_json(s.primal_retention);
    e["dual_retention"] = quantiles_json(s.dual_retention);
    summary.push_back(std::move(e));
  }
  j["summary"] = std::move(summary);
  out << j.dump(2) << '\n';
}

} // namespace expander
