#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "diplab/types.hpp"

namespace diplab {

using NodeSet = boost::dynamic_bitset<std::uint64_t>;
using Edge = std::pair<NodeIndex, NodeIndex>;

// Simple undirected graph on nodes 0..n-1, stored as adjacency bit rows.
class Graph {
 public:
  // n >= 1.
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return rows_.size(); }
  bool adjacent(NodeIndex u, NodeIndex v) const { return rows_[u].test(v); }
  const NodeSet& neighbors(NodeIndex u) const { return rows_[u]; }
  std::vector<NodeIndex> neighbor_list(NodeIndex u) const;
  std::size_t degree(NodeIndex u) const { return rows_[u].count(); }
  std::size_t edge_count() const;
  // Edges with first < second, sorted.
  std::vector<Edge> edges() const;

  void add_edge(NodeIndex u, NodeIndex v);
  void remove_edge(NodeIndex u, NodeIndex v);
  void toggle_edge(NodeIndex u, NodeIndex v);

  // Adds a node with no neighbors and returns its index.
  NodeIndex add_node();

  NodeSet all_nodes() const { return NodeSet(size()).set(); }
  NodeSet empty_set() const { return NodeSet(size()); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(NodeIndex u, NodeIndex v) const;
  std::vector<NodeSet> rows_;
};

// Subgraph induced by `nodes`, relabelled to 0..k-1 in increasing original order.
Graph induced_subgraph(const Graph& g, const NodeSet& nodes);
Graph induced_subgraph(const Graph& g, std::span<const NodeIndex> nodes);

Graph complement(const Graph& g);

// Same graph with node i renamed to mapping[i].
Graph relabel(const Graph& g, std::span<const NodeIndex> mapping);

bool is_connected(const Graph& g);
// Connectivity of the subgraph induced by `alive` (the empty set counts as connected).
bool is_connected(const Graph& g, const NodeSet& alive);
std::vector<NodeSet> connected_components(const Graph& g);

// BFS hop distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeIndex source);

namespace graphs {
Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
Graph star(std::size_t leaves);  // center is node 0
}  // namespace graphs

}  // namespace diplab
