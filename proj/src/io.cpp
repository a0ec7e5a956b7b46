#include "expander/io.hpp"

#include "expander/errors.hpp"

#include <fstream>
#include <sstream>

namespace expander::io {

namespace {

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
}

template <class F> auto guarded(F &&f) {
  try {
    return f();
  } catch (const nlohmann::json::exception &e) {
    throw ArgumentError(std::string("unexpected JSON layout: ") + e.what());
  } catch (const IndexError &e) {
    throw ArgumentError(e.what());
  }
}

VertexSet set_from(const Json &j, std::size_t host) {
  return VertexSet(host, j.get<std::vector<Vertex>>());
}

Rational rational_from(const Json &j) {
  if (j.is_string())
    return Rational::parse(j.get<std::string>());
  auto p = j.get<std::vector<std::int64_t>>();
  if (p.size() != 2)
    throw ArgumentError("rational must be a [p, q] pair");
  return Rational(p[0], p[1]);
}

} // namespace

std::string graph_to_json(const Multigraph &g) {
  Json j;
  j["vertices"] = g.vertex_count();
  Json edges = Json::array();
  for (const Edge &e : g.canonical_edges())
    edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  return j.dump();
}

Multigraph graph_from_json(std::string_view text) {
  const Json j = parse(text);
  return guarded([&] {
    const auto n = j.at("vertices").get<std::int64_t>();
    if (n < 0)
      throw ArgumentError("negative vertex count");
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ArgumentError("edge must be a pair [u, v]");
      edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>()});
    }
    return Multigraph(static_cast<std::size_t>(n), std::move(edges));
  });
}

std::string map_to_json(const CombinatorialMap &m) {
  Json j;
  j["darts"] = m.dart_count;
  j["alpha"] = m.alpha;
  j["sigma"] = m.sigma;
  j["root"] = m.root;
  return j.dump();
}

CombinatorialMap map_from_json(std::string_view text) {
  const Json j = parse(text);
  CombinatorialMap m = guarded([&] {
    CombinatorialMap out;
    out.dart_count = j.at("darts").get<std::size_t>();
    out.alpha = j.at("alpha").get<std::vector<Dart>>();
    out.sigma = j.at("sigma").get<std::vector<Dart>>();
    out.root = j.at("root").get<Dart>();
    return out;
  });
  validate(m);
  return m;
}

Json rational_pair(const Rational &r) { return Json::array({r.num(), r.den()}); }

Json vertex_list(const VertexSet &s) { return s.members(); }

Json to_json(const CutReport &r) {
  Json j;
  j["boundary"] = r.boundary;
  j["volume"] = r.volume_in;
  j["volume_total"] = r.volume_total;
  j["ratio"] = rational_pair(r.ratio);
  return j;
}

Json to_json(const BadSetCertificate &c) {
  Json j;
  j["set"] = vertex_list(c.set);
  j["kappa"] = rational_pair(c.kappa);
  j["strong"] = c.strong;
  j["cut"] = to_json(c.report);
  return j;
}

Json to_json(const CheegerResult &c) {
  Json j;
  j["unbounded"] = c.unbounded;
  if (c.unbounded)
    j["h"] = nullptr;
  else
    j["h"] = rational_pair(c.value);
  j["argmin"] = vertex_list(c.argmin);
  return j;
}

Json to_json(const PeelingTrace &t) {
  Json j;
  j["kappa_eps"] = rational_pair(t.kappa_eps);
  Json steps = Json::array();
  for (const PeelStep &s : t.steps) {
    Json step;
    step["set"] = vertex_list(s.set);
    step["ratio"] = rational_pair(s.report.ratio);
    step["edges_remaining"] = s.edges_remaining;
    step["boundary"] = s.report.boundary;
    step["volume"] = s.report.volume_in;
    step["volume_total"] = s.report.volume_total;
    step["strong"] = s.strong;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["final"] = vertex_list(t.final_set);
  j["stranded"] = vertex_list(t.stranded);
  return j;
}

PeelingTrace trace_from_json(const Json &j, std::size_t host_size) {
  return guarded([&] {
    PeelingTrace t;
    t.kappa_eps = rational_from(j.at("kappa_eps"));
    for (const auto &s : j.at("steps")) {
      PeelStep step;
      step.set = set_from(s.at("set"), host_size);
      step.report.ratio = rational_from(s.at("ratio"));
      step.edges_remaining = s.at("edges_remaining").get<std::int64_t>();
      step.report.boundary = s.value("boundary", step.report.ratio.num());
      step.report.volume_in = s.value("volume", step.report.ratio.den());
      step.report.volume_total = s.value("volume_total", std::int64_t{0});
      step.strong = s.value("strong", false);
      t.steps.push_back(std::move(step));
    }
    t.final_set = set_from(j.at("final"), host_size);
    t.stranded = j.contains("stranded") ? set_from(j.at("stranded"), host_size)
                                        : VertexSet::none(host_size);
    return t;
  });
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ArgumentError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path.string());
  out << text;
  if (!out)
    throw Error("write failed for " + path.string());
}

} // namespace expander::io
