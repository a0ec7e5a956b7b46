// expander: command-line front end.

#include "expander/cheeger.hpp"
#include "expander/duality.hpp"
#include "expander/errors.hpp"
#include "expander/harness.hpp"
#include "expander/io.hpp"
#include "expander/maps.hpp"
#include "expander/peeling.hpp"
#include "expander/sampler.hpp"

#include <CLI11.hpp>

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace expander;
using io::Json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

void emit(const Globals &g, const std::string &text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n')
      std::cout << '\n';
  } else {
    io::write_text(g.out, text);
  }
}

void require_json(const Globals &g) {
  if (g.format != "json")
    throw ConfigError("this subcommand only writes json");
}

Multigraph load_graph(const std::string &graph_path, const std::string &map_path) {
  if (!graph_path.empty() == !map_path.empty())
    throw ConfigError("give exactly one of --graph or --map");
  if (!graph_path.empty())
    return io::graph_from_json(io::read_text(graph_path));
  return underlying_graph(io::map_from_json(io::read_text(map_path))).graph;
}

std::vector<Vertex> parse_list(const std::string &text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(std::stoi(item));
  return out;
}

// Random connected subsets X of G with vol(X) <= vol(G - X): BFS balls of
// random size from random sources.
std::vector<VertexSet> sample_subsets(const Multigraph &g, int count, std::uint64_t seed) {
  std::vector<VertexSet> out;
  const std::size_t n = g.vertex_count();
  if (n == 0 || g.edge_count() == 0)
    return out;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto src = static_cast<Vertex>(rng.below(n));
    const std::size_t target = 1 + rng.below(n);
    std::vector<char> seen(n, 0);
    std::vector<Vertex> order{src};
    seen[static_cast<std::size_t>(src)] = 1;
    std::int64_t vol = g.deg(src);
    for (std::size_t h = 0; h < order.size() && order.size() < target; ++h)
      for (const HalfEdge &he : g.incident(order[h])) {
        const auto w = static_cast<std::size_t>(he.neighbor);
        if (seen[w] || order.size() >= target || 2 * (vol + g.deg(he.neighbor)) > g.total_volume())
          continue;
        seen[w] = 1;
        order.push_back(he.neighbor);
        vol += g.deg(he.neighbor);
      }
    if (vol > 0 && 2 * vol <= g.total_volume())
      out.emplace_back(n, order);
  }
  return out;
}

Json lemma_breakdown(const DualTransfer &dt, const VertexSet &x) {
  Json j;
  j["set"] = io::vertex_list(x);
  j["face_closure"] = io::vertex_list(dt.face_closure(x));
  const VolumeLemma v = dt.check_volume_lemma(x);
  j["volume"] = {{"vol_x", v.volume_x}, {"vol_x_star", v.volume_x_star}, {"holds", v.holds}};
  const OutgoingLemma o = dt.check_outgoing_lemma(x);
  j["outgoing"] = {{"e_x", o.outgoing_x},
                   {"e_x_star", o.outgoing_x_star},
                   {"face_degree_bound", o.face_degree_bound},
                   {"holds", o.holds}};
  const VolumeCapLemma c = dt.check_volume_cap_lemma(x);
  j["volume_cap"] = {{"applicable", c.applicable},
                     {"intermediate_holds", c.intermediate_holds},
                     {"cap_holds", c.cap_holds}};
  const ExpansionCase e = dt.check_expansion_case(x);
  j["case"] = {{"large_boundary", e.large_boundary},
               {"lemmas_hold", e.lemmas_hold},
               {"bound_holds", e.bound_holds}};
  return j;
}

int exit_code(const std::exception &e) {
  if (dynamic_cast<const CapacityError *>(&e))
    return 3;
  if (dynamic_cast<const SamplingError *>(&e))
    return 4;
  if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const ArgumentError *>(&e) ||
      dynamic_cast<const DegenerateError *>(&e))
    return 2;
  return 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Expander subgraphs of random triangulations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Random seed");
  app.add_option("--out", globals.out, "Output file (default stdout)");
  app.add_option("--format", globals.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // sample
  auto *sample = app.add_subcommand("sample", "Sample a random triangulation as a map");
  int s_n = 4;
  std::optional<double> s_theta;
  std::optional<int> s_genus;
  std::string s_method = "automatic";
  long long s_attempts = 100000;
  sample->add_option("--n", s_n, "Number of triangle pairs (2n faces)")->required();
  auto *s_theta_opt = sample->add_option("--theta", s_theta, "Genus ratio, genus = round(theta n)");
  sample->add_option("--genus", s_genus, "Target genus")->excludes(s_theta_opt);
  sample->add_option("--method", s_method, "rejection, switch_chain or automatic");
  sample->add_option("--max-attempts", s_attempts, "Rejection budget");

  // dualize
  auto *dualize = app.add_subcommand("dualize", "Dual of a map");
  std::string d_map;
  bool d_graph = false;
  dualize->add_option("--map", d_map, "Map JSON")->required();
  dualize->add_flag("--graph", d_graph, "Write the dual's underlying graph instead");

  // cheeger
  auto *cheeger = app.add_subcommand("cheeger", "Exact Cheeger constant of a small graph");
  std::string c_graph, c_map;
  std::size_t c_cap = kDefaultEnumerationCap;
  cheeger->add_option("--graph", c_graph, "Graph JSON");
  cheeger->add_option("--map", c_map, "Map JSON (uses its underlying graph)");
  cheeger->add_option("--cap", c_cap, "Largest vertex count searched exhaustively");

  // isolated
  auto *isolated = app.add_subcommand("isolated", "Volume of kappa-isolated vertices");
  std::string i_graph, i_map, i_kappa;
  bool i_strong = false;
  std::size_t i_budget = 100000, i_cap = kDefaultEnumerationCap;
  isolated->add_option("--graph", i_graph, "Graph JSON");
  isolated->add_option("--map", i_map, "Map JSON (uses its underlying graph)");
  isolated->add_option("--kappa", i_kappa, "Threshold, e.g. 1/5")->required();
  isolated->add_flag("--strong", i_strong, "Only strong bad sets");
  isolated->add_option("--budget", i_budget, "Ball sources probed above the cap");
  isolated->add_option("--cap", i_cap, "Largest vertex count searched exhaustively");

  // peel
  auto *peel_cmd = app.add_subcommand("peel", "Remove bad sets until an expander remains");
  std::string p_graph, p_map, p_kappa, p_eps = "1/10", p_strategy = "exact";
  bool p_random = false;
  std::size_t p_cap = kDefaultEnumerationCap;
  peel_cmd->add_option("--graph", p_graph, "Graph JSON");
  peel_cmd->add_option("--map", p_map, "Map JSON (uses its underlying graph)");
  peel_cmd->add_option("--kappa", p_kappa, "Expansion target before the (1-eps) factor")->required();
  peel_cmd->add_option("--eps", p_eps, "Slack, 0 < eps < 1/2");
  peel_cmd->add_option("--strategy", p_strategy, "exact, ball_growing, sweep or combined");
  peel_cmd->add_flag("--random-tiebreak", p_random, "Exact strategy picks a uniform bad set");
  peel_cmd->add_option("--cap", p_cap, "Largest vertex count searched exhaustively");

  // transfer
  auto *transfer = app.add_subcommand("transfer", "Carry a dual expander back to the map");
  std::string t_map, t_faces, t_trace, t_kappa;
  int t_samples = 32;
  std::size_t t_cap = kDefaultEnumerationCap;
  transfer->add_option("--map", t_map, "Primal map JSON")->required();
  auto *t_faces_opt = transfer->add_option("--faces", t_faces, "Comma-separated face indices");
  transfer->add_option("--trace", t_trace, "Peel trace over the dual graph; uses its final set")
      ->excludes(t_faces_opt);
  transfer->add_option("--kappa", t_kappa, "Expansion of the dual subgraph")->required();
  transfer->add_option("--samples", t_samples, "Random sets X checked against each lemma");
  transfer->add_option("--cap", t_cap, "Largest vertex count searched exhaustively");

  // pipeline
  auto *pipeline = app.add_subcommand("pipeline", "Sample, peel the dual, transfer, report");
  PipelineConfig cfg;
  std::vector<std::string> q_kappa;
  std::string q_eps = "1/10", q_strategy = "combined", q_method = "automatic";
  bool q_certs = false;
  int q_threads = 0;
  pipeline->add_option("--n", cfg.n, "Number of triangle pairs (2n faces)")->required();
  auto *q_theta_opt = pipeline->add_option("--theta", cfg.theta, "Genus ratio");
  pipeline->add_option("--genus", cfg.genus, "Target genus")->excludes(q_theta_opt);
  pipeline->add_option("--kappa", q_kappa, "kappa0 values (comma separated)")->delimiter(',');
  pipeline->add_option("--eps", q_eps, "Slack, 0 < eps < 1/2");
  pipeline->add_option("--strategy", q_strategy, "exact, ball_growing, sweep or combined");
  pipeline->add_option("--trials", cfg.trials, "Independent samples");
  pipeline->add_option("--budget", cfg.budget, "Ball sources probed when estimating isolation");
  pipeline->add_option("--cap", cfg.exact_cap, "Largest vertex count searched exhaustively");
  pipeline->add_option("--method", q_method, "Sampler: rejection, switch_chain or automatic");
  pipeline->add_option("--max-attempts", cfg.max_attempts, "Rejection budget");
  pipeline->add_option("--threads", q_threads, "OpenMP threads (0 = runtime default)");
  pipeline->add_flag("--emit-certificates", q_certs, "Include traces and subgraphs (json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) {
      require_json(globals);
      GluingConfig gc;
      gc.n = s_n;
      gc.seed = globals.seed;
      gc.max_attempts = s_attempts;
      gc.method = parse_sample_method(s_method);
      if (s_theta)
        gc.target_genus = genus_for_theta(s_n, *s_theta);
      else if (s_genus)
        gc.target_genus = *s_genus;
      if (gc.target_genus && !genus_feasible(s_n, *gc.target_genus))
        throw ConfigError("infeasible genus for this n");
      const CombinatorialMap m = gc.target_genus ? sample_triangulation(gc)
                                                 : sample_gluing(s_n, globals.seed, s_attempts);
      emit(globals, io::map_to_json(m));
    } else if (*dualize) {
      require_json(globals);
      const CombinatorialMap m = io::map_from_json(io::read_text(d_map));
      const CombinatorialMap d = dual(m);
      emit(globals, d_graph ? io::graph_to_json(underlying_graph(d).graph) : io::map_to_json(d));
    } else if (*cheeger) {
      require_json(globals);
      const Multigraph g = load_graph(c_graph, c_map);
      emit(globals, io::to_json(cheeger_exact(g, {c_cap})).dump());
    } else if (*isolated) {
      require_json(globals);
      const Multigraph g = load_graph(i_graph, i_map);
      const auto est =
          estimate_isolated_volume(g, Rational::parse(i_kappa), i_budget, i_strong, {i_cap});
      Json j;
      j["kappa"] = io::rational_pair(Rational::parse(i_kappa));
      j["strong"] = i_strong;
      j["volume"] = est.volume;
      j["vertices"] = io::vertex_list(est.vertices);
      j["exact"] = est.exact;
      emit(globals, j.dump());
    } else if (*peel_cmd) {
      require_json(globals);
      const Multigraph g = load_graph(p_graph, p_map);
      PeelOptions po;
      po.find.strategy = parse_strategy(p_strategy);
      po.find.exact_within_cap = true;
      po.find.exact_cap = p_cap;
      if (p_random)
        po.random_seed = globals.seed;
      const Rational kappa = Rational::parse(p_kappa), eps = Rational::parse(p_eps);
      if (!(eps > Rational(0)) || !(eps < Rational(1, 2)))
        throw ConfigError("eps must satisfy 0 < eps < 1/2");
      const PeelResult r = peel(g, kappa, eps, po);
      Json j = io::to_json(r.trace);
      j["certified"] = r.certified;
      emit(globals, j.dump());
    } else if (*transfer) {
      require_json(globals);
      const CombinatorialMap m = io::map_from_json(io::read_text(t_map));
      const std::size_t faces_n = faces(m).size();
      VertexSet s;
      if (!t_trace.empty())
        s = io::trace_from_json(Json::parse(io::read_text(t_trace)), faces_n).final_set;
      else
        s = VertexSet(faces_n, parse_list(t_faces));
      DualTransfer dt(DualTransferInstance{m, s, Rational::parse(t_kappa)});
      const TransferResult tr = transfer_expander(dt, {t_cap});
      Json j;
      j["bound"] = io::rational_pair(tr.bound);
      j["face_degree_bound"] = tr.face_degree_bound;
      j["dual_verified"] = tr.dual_verified;
      j["primal_verified"] = tr.primal_verified;
      j["dual_cheeger"] = tr.dual_cheeger ? io::to_json(*tr.dual_cheeger) : Json(nullptr);
      j["primal_cheeger"] = tr.primal_cheeger ? io::to_json(*tr.primal_cheeger) : Json(nullptr);
      j["subgraph"] = Json::parse(io::graph_to_json(tr.primal.graph));
      j["subgraph_map_vertices"] = tr.primal.to_map_vertex;
      j["subgraph_map_edges"] = tr.primal.map_edges;
      j["induced"] = tr.primal.induced;
      Json samples = Json::array();
      for (const VertexSet &x : sample_subsets(tr.primal.graph, t_samples, globals.seed))
        samples.push_back(lemma_breakdown(dt, x));
      j["lemmas"] = std::move(samples);
      emit(globals, j.dump());
    } else if (*pipeline) {
      for (const auto &k : q_kappa)
        cfg.kappa0.push_back(Rational::parse(k));
      cfg.eps = Rational::parse(q_eps);
      cfg.seed = globals.seed;
      cfg.strategy = parse_strategy(q_strategy);
      cfg.sample_method = parse_sample_method(q_method);
      cfg.keep_certificates = q_certs;
      if (q_threads > 0)
        omp_set_num_threads(q_threads);
      const PipelineReport report = run_pipeline(cfg);
      std::ostringstream ss;
      emit_report(report, parse_report_format(globals.format), ss);
      emit(globals, ss.str());
    }
  } catch (const std::exception &e) {
    std::cerr << "expander: " << e.what() << '\n';
    return exit_code(e);
  }
  return 0;
}
