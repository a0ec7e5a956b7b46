#pragma once

// Transfer of an expander subgraph from the dual map to the primal. Given
// an induced subgraph G* of M* (a set of faces of M), G is the subgraph of
// M formed by the edges dual to edges of G*. Each inequality used to show G
// is a kappa/(8D)-expander is exposed as a checkable predicate.

#include "expander/cheeger.hpp"
#include "expander/maps.hpp"
#include "expander/multigraph.hpp"
#include "expander/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace expander {

struct DualTransferInstance {
  CombinatorialMap map;
  /// Faces of `map` (= vertices of the dual) spanning G*.
  VertexSet dual_vertex_set;
  /// Certified expansion of G*.
  Rational kappa;
};

/// How a face f of G* is declared incident to a vertex x of G.
enum class FaceIncidence {
  /// Some edge of G on the boundary of f has x as an endpoint.
  via_subgraph_edges,
  /// x is a corner of f in M, whether or not the edges there belong to G.
  via_map_corners,
};

struct PrimalSubgraph {
  Multigraph graph;
  /// Vertex of M for each vertex of `graph`, increasing.
  std::vector<Vertex> to_map_vertex;
  /// Edge of M (alpha-orbit index) for each edge of `graph`.
  std::vector<EdgeId> map_edges;
  /// Whether `graph` is the subgraph of M induced by its vertex set.
  bool induced = false;
};

struct VolumeLemma {
  std::int64_t volume_x = 0;
  std::int64_t volume_x_star = 0;
  bool holds = false;
};

struct OutgoingLemma {
  std::int64_t outgoing_x = 0;
  std::int64_t outgoing_x_star = 0;
  int face_degree_bound = 0;
  bool holds = false;
};

struct VolumeCapLemma {
  /// vol_G(X) <= vol_G(G - X) and e_G(X, G - X) <= vol_G(X) / (4D).
  bool applicable = false;
  std::int64_t volume_x = 0;
  std::int64_t volume_x_star = 0;
  std::int64_t volume_dual_total = 0;
  /// vol(X*) <= (3/2) vol_G(X)
  bool intermediate_holds = false;
  /// vol(X*) <= (3/4) vol(G*)
  bool cap_holds = false;
  bool holds() const { return applicable && intermediate_holds && cap_holds; }
};

/// Which branch of the expansion argument a set X falls in, and whether the
/// final bound e_G(X, G - X) >= kappa/(8D) vol_G(X) holds there.
struct ExpansionCase {
  bool large_boundary = false; ///< e_G >= vol_G(X) / (4D)
  bool lemmas_hold = false;    ///< all three lemmas, when !large_boundary
  bool bound_holds = false;
};

class DualTransfer {
public:
  explicit DualTransfer(DualTransferInstance inst,
                        FaceIncidence incidence = FaceIncidence::via_subgraph_edges);

  const DualTransferInstance &instance() const { return inst_; }
  /// Largest face degree of the map, computed from the map itself.
  int face_degree_bound() const { return face_bound_; }
  const UnderlyingGraph &primal_map_graph() const { return primal_ug_; }
  const UnderlyingGraph &dual_map_graph() const { return dual_ug_; }
  /// G*: the dual graph induced on the dual vertex set (local indices).
  const InducedSubgraph &dual_subgraph() const { return dual_sub_; }
  /// G: the primal edges dual to edges of G*.
  const PrimalSubgraph &primal() const { return primal_; }

  /// X* for a set X of vertices of G, as vertices of G* (local indices).
  VertexSet face_closure(const VertexSet &x) const;

  VolumeLemma check_volume_lemma(const VertexSet &x) const;
  OutgoingLemma check_outgoing_lemma(const VertexSet &x) const;
  VolumeCapLemma check_volume_cap_lemma(const VertexSet &x) const;
  /// Requires vol_G(X) <= vol_G(G - X) and vol_G(X) > 0.
  ExpansionCase check_expansion_case(const VertexSet &x) const;

  /// Pairs (dart of G leaving X, the same dart read in G* leaving X*),
  /// one per oriented edge counted by vol_G(X).
  std::vector<std::pair<Dart, Dart>> volume_injection(const VertexSet &x) const;
  /// Dual-subgraph vertex (local) that a dart starts at in G*, or -1.
  Vertex dual_origin(Dart d) const;
  /// Primal-subgraph vertex (local) that a dart starts at in G, or -1.
  Vertex primal_origin(Dart d) const;

private:
  DualTransferInstance inst_;
  FaceIncidence incidence_;
  int face_bound_ = 0;
  UnderlyingGraph primal_ug_;
  UnderlyingGraph dual_ug_;
  InducedSubgraph dual_sub_;
  PrimalSubgraph primal_;
  std::vector<Vertex> map_to_primal_;
  std::vector<Vertex> face_to_dual_;
  std::vector<char> edge_kept_;
};

PrimalSubgraph primal_from_dual(const DualTransferInstance &inst);
VertexSet face_closure(const DualTransfer &t, const VertexSet &x);
VolumeLemma check_volume_lemma(const DualTransfer &t, const VertexSet &x);
OutgoingLemma check_outgoing_lemma(const DualTransfer &t, const VertexSet &x);
VolumeCapLemma check_volume_cap_lemma(const DualTransfer &t, const VertexSet &x);

struct TransferResult {
  PrimalSubgraph primal;
  /// kappa / (8D).
  Rational bound;
  int face_degree_bound = 0;
  bool dual_verified = false;
  bool primal_verified = false;
  std::optional<CheegerResult> dual_cheeger;
  std::optional<CheegerResult> primal_cheeger;
};

/// Builds G and its claimed bound kappa/(8D). Within the exact cap, first
/// checks that G* really is a kappa-expander (ArgumentError if not), then
/// that h(G) >= kappa/(8D) (TheoremViolation if not).
TransferResult transfer_expander(const DualTransfer &t, const OracleOptions &opts = {});
TransferResult transfer_expander(const DualTransferInstance &inst, const OracleOptions &opts = {});

} // namespace expander
