#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "diplab/graph.hpp"

namespace diplab {

// A connected graph plus an injective identifier assignment with every id in
// [1, n^id_exponent]. The exponent is the smallest integer >= 2 that covers the
// largest id, unless given explicitly.
class NetworkConfig {
 public:
  explicit NetworkConfig(Graph graph);
  NetworkConfig(Graph graph, std::vector<NodeId> ids,
                std::optional<unsigned> id_exponent = std::nullopt);

  const Graph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  NodeId id(NodeIndex v) const { return ids_[v]; }
  std::span<const NodeId> ids() const { return ids_; }
  std::optional<NodeIndex> index_of(NodeId id) const;

  unsigned id_exponent() const { return id_exponent_; }
  // n^id_exponent, the public bound every id respects.
  Element max_id_bound() const;

  // Indices ordered by increasing identifier.
  std::vector<NodeIndex> indices_by_id() const;

 private:
  Graph graph_;
  std::vector<NodeId> ids_;
  unsigned id_exponent_ = 2;
  std::unordered_map<NodeId, NodeIndex> index_;
};

}  // namespace diplab
