#include "expander/cheeger.hpp"

#include "expander/errors.hpp"

#include <algorithm>

namespace expander {

using kernels::SmallGraph;

namespace {

BadSetCertificate make_certificate(const Multigraph &g, const SmallGraph &small,
                                   const kernels::SetStats &s, const Rational &kappa) {
  BadSetCertificate cert;
  cert.set = kernels::to_vertex_set(s.set, g.vertex_count());
  cert.report.boundary = s.boundary;
  cert.report.volume_in = s.volume;
  cert.report.volume_total = g.total_volume();
  cert.report.ratio = Rational(s.boundary, s.volume);
  cert.strong = small.connected(small.all() & ~s.set);
  cert.kappa = kappa;
  return cert;
}

} // namespace

CheegerResult cheeger_exact(const Multigraph &g, const OracleOptions &opts) {
  if (g.edge_count() == 0)
    throw DegenerateError("Cheeger constant of an edgeless graph");
  SmallGraph small(g, opts.cap);
  auto acc = kernels::enumerate_connected(small, kernels::MinRatio{}, opts.exec);
  CheegerResult out;
  if (!acc.best) {
    out.unbounded = true;
    out.argmin = VertexSet::none(g.vertex_count());
    return out;
  }
  out.value = Rational(acc.best->boundary, acc.best->volume);
  out.argmin = kernels::to_vertex_set(acc.best->set, g.vertex_count());
  return out;
}

bool is_expander(const Multigraph &g, const Rational &kappa, const OracleOptions &opts) {
  if (g.edge_count() == 0)
    return true;
  return cheeger_exact(g, opts).at_least(kappa);
}

std::optional<BadSetCertificate> certify_bad_set(const Multigraph &g, const VertexSet &x,
                                                 const Rational &kappa) {
  CutReport report = cut_report(g, x);
  if (!report.within_half() || !ratio_below(report.boundary, report.volume_in, kappa))
    return std::nullopt;
  if (!is_connected(g, x))
    return std::nullopt;
  BadSetCertificate cert{x, report, false, kappa};
  cert.strong = is_connected(g, x.complement());
  return cert;
}

bool is_bad_set(const Multigraph &g, const VertexSet &x, const Rational &kappa) {
  return certify_bad_set(g, x, kappa).has_value();
}

bool is_strong_bad_set(const Multigraph &g, const VertexSet &x, const Rational &kappa) {
  auto cert = certify_bad_set(g, x, kappa);
  return cert && cert->strong;
}

namespace {

VertexSet isolated_union(const Multigraph &g, const Rational &kappa, bool strong,
                         const OracleOptions &opts) {
  SmallGraph small(g, opts.cap);
  if (g.edge_count() == 0)
    return VertexSet::none(g.vertex_count());
  kernels::BadUnion proto{&small, kappa, strong, 0};
  auto acc = kernels::enumerate_connected(small, proto, opts.exec);
  return kernels::to_vertex_set(acc.members, g.vertex_count());
}

} // namespace

VertexSet isolated_vertices_exact(const Multigraph &g, const Rational &kappa,
                                  const OracleOptions &opts) {
  return isolated_union(g, kappa, false, opts);
}

VertexSet strongly_isolated_vertices_exact(const Multigraph &g, const Rational &kappa,
                                           const OracleOptions &opts) {
  return isolated_union(g, kappa, true, opts);
}

std::vector<BadSetCertificate> bad_sets_exact(const Multigraph &g, const Rational &kappa,
                                              bool strong_only, const OracleOptions &opts) {
  SmallGraph small(g, opts.cap);
  std::vector<BadSetCertificate> out;
  if (g.edge_count() == 0)
    return out;
  kernels::BadCollect proto{&small, kappa, strong_only, {}};
  auto acc = kernels::enumerate_connected(small, proto, opts.exec);
  out.reserve(acc.sets.size());
  for (const auto &s : acc.sets)
    out.push_back(make_certificate(g, small, s, kappa));
  return out;
}

std::vector<std::optional<BadSetCertificate>>
isolation_witnesses(const Multigraph &g, const Rational &kappa, bool strong_only,
                    const OracleOptions &opts) {
  SmallGraph small(g, opts.cap);
  std::vector<std::optional<BadSetCertificate>> out(g.vertex_count());
  if (g.edge_count() == 0)
    return out;
  kernels::BadWitness proto{&small, kappa, strong_only, {}};
  auto acc = kernels::enumerate_connected(small, proto, opts.exec);
  for (std::size_t v = 0; v < acc.best.size(); ++v)
    if (acc.best[v])
      out[v] = make_certificate(g, small, *acc.best[v], kappa);
  return out;
}

bool strengthening_range_holds(const Rational &kappa, const Rational &eps) {
  const Rational a = (Rational(1) - Rational(2) * eps) / Rational(3);
  const Rational b = Rational(1) - Rational(4) * eps;
  return kappa < std::min(a, b);
}

bool strengthening_hypotheses_hold(const Multigraph &g, const Rational &kappa,
                                   const Rational &eps, const OracleOptions &opts) {
  if (!strengthening_range_holds(kappa, eps))
    return false;
  const auto isol = strongly_isolated_vertices_exact(g, kappa, opts);
  return Rational(volume(g, isol)) <= eps * Rational(g.total_volume());
}

BadSetCertificate strengthen_bad_set(const Multigraph &g, const VertexSet &x,
                                     const Rational &kappa, const Rational &eps) {
  if (volume(g, x) == 0)
    throw DegenerateError("strengthening a zero-volume set");
  const Rational squared = kappa * kappa;
  if (!is_bad_set(g, x, squared))
    throw ArgumentError("input set is not a kappa^2-bad set");

  // Components come sorted by decreasing volume; keep the first outside.
  const auto rest = connected_components(g, x.complement());
  VertexSet y = x;
  for (std::size_t i = 1; i < rest.size(); ++i)
    y = y.unite(rest[i]);

  const std::string context = strengthening_range_holds(kappa, eps)
                                  ? " (range hypothesis holds)"
                                  : " (range hypothesis kappa < min((1-2eps)/3, 1-4eps) fails)";
  CutReport report = cut_report(g, y);
  if (!is_connected(g, y))
    throw ConstructionError("connected", "strengthened set is not connected" + context);
  if (!report.within_half())
    throw ConstructionError("half_volume", "strengthened set has volume " +
                                               std::to_string(report.volume_in) + " > " +
                                               std::to_string(report.volume_total) + "/2" +
                                               context);
  if (!ratio_below(report.boundary, report.volume_in, kappa))
    throw ConstructionError("ratio", "strengthened set has ratio " + report.ratio.str() +
                                         " >= " + kappa.str() + context);
  if (!is_connected(g, y.complement()))
    throw ConstructionError("complement_connected",
                            "complement of strengthened set is disconnected" + context);
  return BadSetCertificate{y, report, true, kappa};
}

} // namespace expander
