#include "expander/duality.hpp"

#include "expander/errors.hpp"

#include <algorithm>

namespace expander {

DualTransfer::DualTransfer(DualTransferInstance inst, FaceIncidence incidence)
    : inst_(std::move(inst)), incidence_(incidence) {
  const MapSummary summary = validate(inst_.map);
  if (inst_.dual_vertex_set.host_size() != summary.faces)
    throw ArgumentError("dual vertex set indexes " +
                        std::to_string(inst_.dual_vertex_set.host_size()) + " faces, map has " +
                        std::to_string(summary.faces));
  face_bound_ = summary.face_degrees.empty() ? 0 : summary.face_degrees.back();
  primal_ug_ = underlying_graph(inst_.map);
  dual_ug_ = underlying_graph(dual(inst_.map));

  face_to_dual_.assign(summary.faces, -1);
  if (!inst_.dual_vertex_set.empty()) {
    dual_sub_ = induced_subgraph(dual_ug_.graph, inst_.dual_vertex_set);
    for (std::size_t i = 0; i < dual_sub_.to_host.size(); ++i)
      face_to_dual_[static_cast<std::size_t>(dual_sub_.to_host[i])] = static_cast<Vertex>(i);
  } else {
    dual_sub_ = InducedSubgraph{Multigraph(0, std::vector<Edge>{}), {}};
  }

  // Edge ids agree between M and M*: both number alpha-orbits by smallest dart.
  const auto in_set = inst_.dual_vertex_set.indicator();
  const std::size_t m_edges = primal_ug_.graph.edge_count();
  edge_kept_.assign(m_edges, 0);
  std::vector<char> touched(primal_ug_.graph.vertex_count(), 0);
  for (std::size_t e = 0; e < m_edges; ++e) {
    const Edge &de = dual_ug_.graph.edge(static_cast<EdgeId>(e));
    if (in_set[static_cast<std::size_t>(de.u)] && in_set[static_cast<std::size_t>(de.v)]) {
      edge_kept_[e] = 1;
      const Edge &pe = primal_ug_.graph.edge(static_cast<EdgeId>(e));
      touched[static_cast<std::size_t>(pe.u)] = 1;
      touched[static_cast<std::size_t>(pe.v)] = 1;
    }
  }
  map_to_primal_.assign(touched.size(), -1);
  for (std::size_t v = 0; v < touched.size(); ++v)
    if (touched[v]) {
      map_to_primal_[v] = static_cast<Vertex>(primal_.to_map_vertex.size());
      primal_.to_map_vertex.push_back(static_cast<Vertex>(v));
    }
  std::vector<Edge> kept;
  bool induced = true;
  for (std::size_t e = 0; e < m_edges; ++e) {
    const Edge &pe = primal_ug_.graph.edge(static_cast<EdgeId>(e));
    if (edge_kept_[e]) {
      kept.push_back({map_to_primal_[static_cast<std::size_t>(pe.u)],
                      map_to_primal_[static_cast<std::size_t>(pe.v)]});
      primal_.map_edges.push_back(static_cast<EdgeId>(e));
    } else if (touched[static_cast<std::size_t>(pe.u)] && touched[static_cast<std::size_t>(pe.v)]) {
      induced = false;
    }
  }
  primal_.graph = Multigraph(primal_.to_map_vertex.size(), std::move(kept));
  primal_.induced = induced;
}

Vertex DualTransfer::dual_origin(Dart d) const {
  return face_to_dual_[static_cast<std::size_t>(dual_ug_.dart_vertex[static_cast<std::size_t>(d)])];
}

Vertex DualTransfer::primal_origin(Dart d) const {
  return map_to_primal_[static_cast<std::size_t>(primal_ug_.dart_vertex[static_cast<std::size_t>(d)])];
}

VertexSet DualTransfer::face_closure(const VertexSet &x) const {
  if (x.host_size() != primal_.graph.vertex_count())
    throw IndexError("vertex set does not index the primal subgraph");
  const auto in_x = x.indicator();
  auto in_x_at = [&](Dart d) {
    const Vertex v = primal_origin(d);
    return v >= 0 && in_x[static_cast<std::size_t>(v)];
  };
  std::vector<char> mark(dual_sub_.graph.vertex_count(), 0);
  const auto &alpha = inst_.map.alpha;
  for (std::size_t d = 0; d < inst_.map.dart_count; ++d) {
    const Vertex f = dual_origin(static_cast<Dart>(d));
    if (f < 0)
      continue;
    bool incident = false;
    if (incidence_ == FaceIncidence::via_subgraph_edges) {
      // Dart d lies on face f; its edge touches x at either end.
      incident = edge_kept_[static_cast<std::size_t>(primal_ug_.dart_edge[d])] &&
                 (in_x_at(static_cast<Dart>(d)) || in_x_at(alpha[d]));
    } else {
      incident = in_x_at(static_cast<Dart>(d));
    }
    if (incident)
      mark[static_cast<std::size_t>(f)] = 1;
  }
  return VertexSet::from_indicator(mark);
}

VolumeLemma DualTransfer::check_volume_lemma(const VertexSet &x) const {
  VolumeLemma r;
  r.volume_x = volume(primal_.graph, x);
  r.volume_x_star = volume(dual_sub_.graph, face_closure(x));
  r.holds = r.volume_x <= r.volume_x_star;
  return r;
}

OutgoingLemma DualTransfer::check_outgoing_lemma(const VertexSet &x) const {
  OutgoingLemma r;
  r.outgoing_x = boundary(primal_.graph, x);
  r.outgoing_x_star = boundary(dual_sub_.graph, face_closure(x));
  r.face_degree_bound = face_bound_;
  r.holds = 2 * static_cast<std::int64_t>(face_bound_) * r.outgoing_x >= r.outgoing_x_star;
  return r;
}

VolumeCapLemma DualTransfer::check_volume_cap_lemma(const VertexSet &x) const {
  VolumeCapLemma r;
  r.volume_x = volume(primal_.graph, x);
  const std::int64_t out = boundary(primal_.graph, x);
  r.applicable = 2 * r.volume_x <= primal_.graph.total_volume() &&
                 4 * static_cast<std::int64_t>(face_bound_) * out <= r.volume_x;
  if (!r.applicable)
    return r;
  r.volume_x_star = volume(dual_sub_.graph, face_closure(x));
  r.volume_dual_total = dual_sub_.graph.total_volume();
  r.intermediate_holds = 2 * r.volume_x_star <= 3 * r.volume_x;
  r.cap_holds = 4 * r.volume_x_star <= 3 * r.volume_dual_total;
  return r;
}

ExpansionCase DualTransfer::check_expansion_case(const VertexSet &x) const {
  const std::int64_t vol = volume(primal_.graph, x);
  if (vol == 0 || 2 * vol > primal_.graph.total_volume())
    throw ArgumentError("expansion case needs 0 < vol_G(X) <= vol_G(G - X)");
  const std::int64_t out = boundary(primal_.graph, x);
  const auto D = static_cast<std::int64_t>(face_bound_);
  ExpansionCase c;
  c.large_boundary = 4 * D * out >= vol;
  if (!c.large_boundary)
    c.lemmas_hold = check_volume_lemma(x).holds && check_outgoing_lemma(x).holds &&
                    check_volume_cap_lemma(x).holds();
  // e / vol >= kappa / (8D)
  c.bound_holds = !ratio_below(out, vol, inst_.kappa / Rational(8 * D));
  return c;
}

std::vector<std::pair<Dart, Dart>> DualTransfer::volume_injection(const VertexSet &x) const {
  const auto in_x = x.indicator();
  std::vector<std::pair<Dart, Dart>> out;
  for (std::size_t d = 0; d < inst_.map.dart_count; ++d) {
    if (!edge_kept_[static_cast<std::size_t>(primal_ug_.dart_edge[d])])
      continue;
    const Vertex v = primal_origin(static_cast<Dart>(d));
    if (v >= 0 && in_x[static_cast<std::size_t>(v)])
      out.emplace_back(static_cast<Dart>(d), static_cast<Dart>(d));
  }
  return out;
}

PrimalSubgraph primal_from_dual(const DualTransferInstance &inst) {
  return DualTransfer(inst).primal();
}

VertexSet face_closure(const DualTransfer &t, const VertexSet &x) { return t.face_closure(x); }
VolumeLemma check_volume_lemma(const DualTransfer &t, const VertexSet &x) {
  return t.check_volume_lemma(x);
}
OutgoingLemma check_outgoing_lemma(const DualTransfer &t, const VertexSet &x) {
  return t.check_outgoing_lemma(x);
}
VolumeCapLemma check_volume_cap_lemma(const DualTransfer &t, const VertexSet &x) {
  return t.check_volume_cap_lemma(x);
}

TransferResult transfer_expander(const DualTransfer &t, const OracleOptions &opts) {
  TransferResult r;
  r.primal = t.primal();
  r.face_degree_bound = t.face_degree_bound();
  r.bound = t.instance().kappa / Rational(8 * t.face_degree_bound());
  const Multigraph &gs = t.dual_subgraph().graph;
  if (gs.edge_count() == 0) {
    r.dual_verified = r.primal_verified = true;
    return r;
  }
  if (gs.vertex_count() <= opts.cap) {
    r.dual_cheeger = cheeger_exact(gs, opts);
    if (!r.dual_cheeger->at_least(t.instance().kappa))
      throw ArgumentError("dual subgraph has h = " + r.dual_cheeger->value.str() +
                          " < kappa = " + t.instance().kappa.str());
    r.dual_verified = true;
  }
  const Multigraph &g = r.primal.graph;
  if (g.vertex_count() <= opts.cap) {
    r.primal_cheeger = cheeger_exact(g, opts);
    if (!r.primal_cheeger->at_least(r.bound))
      throw TheoremViolation("primal subgraph has h = " + r.primal_cheeger->value.str() +
                             " < kappa/(8D) = " + r.bound.str());
    r.primal_verified = true;
  }
  return r;
}

TransferResult transfer_expander(const DualTransferInstance &inst, const OracleOptions &opts) {
  return transfer_expander(DualTransfer(inst), opts);
}

} // namespace expander
