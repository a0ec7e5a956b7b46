#include "expander/peeling.hpp"

#include "expander/errors.hpp"

#include <algorithm>

namespace expander {

const char *to_string(Strategy s) {
  switch (s) {
  case Strategy::exact:
    return "exact";
  case Strategy::ball_growing:
    return "ball_growing";
  case Strategy::sweep:
    return "sweep";
  case Strategy::combined:
    return "combined";
  }
  return "?";
}

Strategy parse_strategy(const std::string &name) {
  for (Strategy s : {Strategy::exact, Strategy::ball_growing, Strategy::sweep, Strategy::combined})
    if (name == to_string(s))
      return s;
  throw ArgumentError("unknown strategy '" + name + "'");
}

namespace {

struct Found {
  std::optional<BadSetCertificate> cert;
  bool exact = false;
};

BadSetCertificate from_candidate(const Multigraph &g, const kernels::Candidate &c,
                                 const Rational &kappa) {
  VertexSet set(g.vertex_count(), c.members);
  auto cert = certify_bad_set(g, set, kappa);
  if (!cert)
    throw TheoremViolation("heuristic returned a set that is not bad");
  return *cert;
}

Found find_impl(const Multigraph &g, const Rational &kappa, const FindOptions &opts, Rng *rng) {
  if (g.edge_count() == 0)
    throw DegenerateError("bad-set search on an edgeless graph");
  const bool exact = opts.strategy == Strategy::exact ||
                     (opts.exact_within_cap && g.vertex_count() <= opts.exact_cap);
  Found out;
  out.exact = exact;
  if (exact) {
    kernels::SmallGraph small(g, opts.exact_cap);
    if (rng) {
      kernels::BadCollect proto{&small, kappa, false, {}};
      auto all = kernels::enumerate_connected(small, proto, opts.exec);
      if (all.sets.empty())
        return out;
      const auto &pick = all.sets[rng->below(all.sets.size())];
      out.cert = certify_bad_set(g, kernels::to_vertex_set(pick.set, g.vertex_count()), kappa);
      return out;
    }
    auto acc = kernels::enumerate_connected(small, kernels::MinRatio{}, opts.exec);
    if (acc.best && kernels::is_bad(*acc.best, kappa))
      out.cert = certify_bad_set(g, kernels::to_vertex_set(acc.best->set, g.vertex_count()), kappa);
    return out;
  }

  std::optional<kernels::Candidate> best;
  auto consider = [&](std::optional<kernels::Candidate> c) {
    if (c && (!best || kernels::compare_candidates(*c, *best) < 0))
      best = std::move(c);
  };
  if (opts.strategy == Strategy::ball_growing || opts.strategy == Strategy::combined) {
    kernels::BallOptions bo;
    bo.max_ball = opts.max_ball;
    consider(kernels::best_ball(g, kernels::grow_balls(g, kappa, bo, opts.exec)));
  }
  if (opts.strategy == Strategy::sweep || opts.strategy == Strategy::combined) {
    auto emb = kernels::spectral_embedding(g, opts.power_iterations, opts.spectral_seed, opts.exec);
    consider(kernels::sweep_cut(g, emb, kappa));
  }
  if (best)
    out.cert = from_candidate(g, *best, kappa);
  return out;
}

void check_parameters(const Rational &kappa, const Rational &eps) {
  if (!(eps > Rational(0)) || !(eps < Rational(1, 2)))
    throw ArgumentError("eps must satisfy 0 < eps < 1/2, got " + eps.str());
  if (!(kappa > Rational(0)))
    throw ArgumentError("kappa must be positive, got " + kappa.str());
}

InducedSubgraph empty_remainder() { return InducedSubgraph{Multigraph(0, std::vector<Edge>{}), {}}; }

} // namespace

std::optional<BadSetCertificate> find_bad_set(const Multigraph &g, const Rational &kappa,
                                              const FindOptions &opts, Rng *rng) {
  return find_impl(g, kappa, opts, rng).cert;
}

PeelResult peel(const Multigraph &g, const Rational &kappa, const Rational &eps,
                const PeelOptions &opts) {
  check_parameters(kappa, eps);
  if (!is_connected(g))
    throw ArgumentError("peel needs a connected graph; use peel_each_component");
  const std::size_t n = g.vertex_count();
  const Rational kappa_eps = (Rational(1) - eps) * kappa;
  std::optional<Rng> rng;
  if (opts.random_seed)
    rng.emplace(*opts.random_seed);

  PeelResult result;
  result.trace.kappa_eps = kappa_eps;
  result.trace.stranded = VertexSet::none(n);
  VertexSet alive = VertexSet::all(n);
  while (true) {
    InducedSubgraph current = induced_subgraph(g, alive);
    if (current.graph.edge_count() == 0) {
      result.trace.stranded = alive;
      alive = VertexSet::none(n);
      result.certified = true;
      break;
    }
    Found found = find_impl(current.graph, kappa_eps, opts.find, rng ? &*rng : nullptr);
    if (!found.cert) {
      result.certified = found.exact;
      break;
    }
    const BadSetCertificate &cert = *found.cert;
    const CutReport &r = cert.report;
    PeelStep step;
    step.set = current.lift(cert.set, n);
    step.report = r;
    step.strong = cert.strong;
    step.edges_remaining = static_cast<std::int64_t>(current.graph.edge_count()) -
                           (r.volume_in - r.boundary) / 2 - r.boundary;
    alive = alive.minus(step.set);
    result.trace.steps.push_back(std::move(step));
    if (alive.empty()) {
      result.certified = true;
      break;
    }
  }
  result.trace.final_set = alive;
  result.remainder = alive.empty() ? empty_remainder() : induced_subgraph(g, alive);
  return result;
}

std::vector<ComponentPeel> peel_each_component(const Multigraph &g, const Rational &kappa,
                                               const Rational &eps, const PeelOptions &opts) {
  std::vector<ComponentPeel> out;
  for (const VertexSet &c : connected_components(g)) {
    InducedSubgraph sub = induced_subgraph(g, c);
    out.push_back({c, peel(sub.graph, kappa, eps, opts)});
  }
  return out;
}

PeelVerdict verify_peel(const Multigraph &g, const PeelingTrace &trace, const Rational &kappa,
                        const Rational &eps, const OracleOptions &opts) {
  auto fail = [](std::optional<std::size_t> step, std::string why) {
    return PeelVerdict{false, step, std::move(why)};
  };
  const std::size_t n = g.vertex_count();
  const Rational kappa_eps = (Rational(1) - eps) * kappa;
  if (trace.kappa_eps != kappa_eps)
    return fail(std::nullopt, "kappa_eps " + trace.kappa_eps.str() + " != (1-eps)kappa " +
                                  kappa_eps.str());
  if (trace.final_set.host_size() != n || trace.stranded.host_size() != n)
    throw ValidationError(trace.steps.size(), "final set indexes a different graph");

  VertexSet alive = VertexSet::all(n);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const PeelStep &step = trace.steps[i];
    if (step.set.host_size() != n)
      throw ValidationError(i, "step " + std::to_string(i) + " indexes a different graph");
    if (step.set.empty())
      throw ValidationError(i, "step " + std::to_string(i) + " removes nothing");
    if (!step.set.is_subset_of(alive))
      return fail(i, "removed set overlaps an earlier one");
    InducedSubgraph current = induced_subgraph(g, alive);
    std::vector<Vertex> local_members;
    for (Vertex v : step.set)
      local_members.push_back(static_cast<Vertex>(
          std::lower_bound(current.to_host.begin(), current.to_host.end(), v) -
          current.to_host.begin()));
    VertexSet local(current.graph.vertex_count(), std::move(local_members));
    if (volume(current.graph, local) == 0)
      return fail(i, "removed set has zero volume");
    auto cert = certify_bad_set(current.graph, local, kappa_eps);
    if (!cert)
      return fail(i, "removed set is not a kappa_eps-bad set of the current graph");
    const CutReport &r = cert->report;
    if (r.boundary != step.report.boundary || r.volume_in != step.report.volume_in ||
        r.volume_total != step.report.volume_total || r.ratio != step.report.ratio)
      return fail(i, "recorded cut numbers do not match the current graph");
    // kappa_eps vol_G(S) >= kappa_eps vol_{G_(i-1)}(S) > boundary in G_(i-1).
    if (volume(g, step.set) < r.volume_in ||
        !ratio_below(r.boundary, r.volume_in, kappa_eps))
      return fail(i, "removal inequality fails");
    const auto expected_edges = static_cast<std::int64_t>(current.graph.edge_count()) -
                                (r.volume_in - r.boundary) / 2 - r.boundary;
    if (expected_edges != step.edges_remaining)
      return fail(i, "edges_remaining mismatch");
    alive = alive.minus(step.set);
  }

  if (!trace.stranded.empty()) {
    if (!trace.final_set.empty() || trace.stranded != alive)
      return fail(std::nullopt, "stranded vertices do not match the leftover graph");
    if (induced_subgraph(g, alive).graph.edge_count() != 0)
      return fail(std::nullopt, "stranded vertices still carry edges");
    return {};
  }
  if (trace.final_set != alive)
    return fail(std::nullopt, "final set is not the input minus the removed sets");
  if (alive.empty())
    return {};
  InducedSubgraph last = induced_subgraph(g, alive);
  if (last.graph.edge_count() == 0)
    return fail(std::nullopt, "edgeless final graph should have been stranded");
  if (last.graph.vertex_count() <= opts.cap && !is_expander(last.graph, kappa_eps, opts))
    return fail(std::nullopt, "final graph is not a kappa_eps-expander");
  return {};
}

bool check_removed_are_isolated(const Multigraph &g, const PeelingTrace &trace,
                                const Rational &kappa_eps, const OracleOptions &opts) {
  const VertexSet isolated = isolated_vertices_exact(g, kappa_eps, opts);
  for (const PeelStep &step : trace.steps)
    if (!step.set.is_subset_of(isolated))
      return false;
  return true;
}

} // namespace expander
