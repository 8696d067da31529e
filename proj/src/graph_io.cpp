#include "diplab/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "diplab/errors.hpp"

namespace diplab {

namespace {

using nlohmann::json;

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

std::uint64_t as_positive(const json& value, const std::string& what) {
  if (!value.is_number_integer()) throw ParseError(what + ": expected an integer");
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  const auto signed_value = value.get<std::int64_t>();
  if (signed_value < 0) throw ParseError(what + ": negative value");
  return static_cast<std::uint64_t>(signed_value);
}

}  // namespace

NetworkConfig GraphFile::to_network() const {
  return ids ? NetworkConfig(graph, *ids) : NetworkConfig(graph);
}

GraphFile parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph file: top level must be an object");
  if (!doc.contains("n")) throw ParseError("graph file: missing \"n\"");
  if (!doc.contains("edges")) throw ParseError("graph file: missing \"edges\"");

  const auto n = as_positive(doc["n"], "n");
  if (n == 0) throw ParseError("n: must be at least 1");
  const auto& edges = doc["edges"];
  if (!edges.is_array()) throw ParseError("edges: expected an array");

  Graph g(n);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected [u, v]");
    const auto u = as_positive(e[0], where);
    const auto v = as_positive(e[1], where);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(where + ": endpoint out of range");
    if (u == v) throw ParseError(where + ": self-loop");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw ParseError(where + ": duplicate edge");
    }
    g.add_edge(u - 1, v - 1);
  }

  GraphFile out{std::move(g), std::nullopt};
  if (doc.contains("ids") && !doc["ids"].is_null()) {
    const auto& ids = doc["ids"];
    if (!ids.is_array() || ids.size() != n) {
      throw ParseError("ids: expected an array of " + std::to_string(n) + " integers");
    }
    std::vector<NodeId> parsed;
    std::set<NodeId> distinct;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto id = as_positive(ids[i], "ids[" + std::to_string(i) + "]");
      if (id == 0) throw ParseError("ids[" + std::to_string(i) + "]: must be positive");
      if (!distinct.insert(id).second) {
        throw ParseError("ids[" + std::to_string(i) + "]: duplicate id");
      }
      parsed.push_back(id);
    }
    out.ids = std::move(parsed);
  }
  return out;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_graph_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.what());
  }
}

std::string to_graph_json(const Graph& g, std::span<const NodeId> ids) {
  json doc;
  doc["n"] = g.size();
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  doc["edges"] = std::move(edges);
  if (!ids.empty()) doc["ids"] = std::vector<NodeId>(ids.begin(), ids.end());
  return doc.dump() + "\n";
}

std::string to_graph_json(const NetworkConfig& cfg) { return to_graph_json(cfg.graph(), cfg.ids()); }

void write_graph_file(const std::filesystem::path& path, const NetworkConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot write");
  out << to_graph_json(cfg);
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace diplab
