#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diplab/network.hpp"

namespace diplab {

// Contents of a graph file: `{"n": int, "edges": [[u,v],...], "ids": [...]?}`
// with 1-based endpoints. Connectivity is not required at this level.
struct GraphFile {
  Graph graph;
  std::optional<std::vector<NodeId>> ids;

  NetworkConfig to_network() const;
};

// Throws ParseError; syntax errors carry line:column.
GraphFile parse_graph_json(std::string_view text);
GraphFile read_graph_file(const std::filesystem::path& path);

std::string to_graph_json(const Graph& g, std::span<const NodeId> ids = {});
std::string to_graph_json(const NetworkConfig& cfg);
void write_graph_file(const std::filesystem::path& path, const NetworkConfig& cfg);

}  // namespace diplab
