#pragma once

// JSON file formats.
//   graph: {"vertices": n, "edges": [[u,v],...]}, edges sorted, u <= v
//   map:   {"darts": 2E, "alpha": [...], "sigma": [...], "root": r}
//   trace: {"kappa_eps": [p,q], "steps": [{"set": [...], "ratio": [a,b],
//           "edges_remaining": m, ...}], "final": [...], "stranded": [...]}

#include "expander/cheeger.hpp"
#include "expander/maps.hpp"
#include "expander/multigraph.hpp"
#include "expander/peeling.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace expander::io {

using Json = nlohmann::ordered_json;

/// Canonical, byte-stable text: equal graphs (up to edge order) serialize
/// identically.
std::string graph_to_json(const Multigraph &g);
/// Throws ArgumentError on malformed input.
Multigraph graph_from_json(std::string_view text);

std::string map_to_json(const CombinatorialMap &m);
/// Validates the map on load.
CombinatorialMap map_from_json(std::string_view text);

Json rational_pair(const Rational &r);
Json vertex_list(const VertexSet &s);
Json to_json(const CutReport &r);
Json to_json(const BadSetCertificate &c);
Json to_json(const CheegerResult &c);
Json to_json(const PeelingTrace &t);
PeelingTrace trace_from_json(const Json &j, std::size_t host_size);

std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, std::string_view text);

} // namespace expander::io
