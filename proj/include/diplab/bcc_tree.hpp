#pragma once

#include <optional>
#include <vector>

#include "diplab/network.hpp"

namespace diplab {

// Rooted spanning tree of depth <= 2 in which each depth-1 node has at most
// one child. parent[root] and child[v] are nullopt when absent.
struct TwoLevelTree {
  NodeIndex root = 0;
  std::vector<std::optional<NodeIndex>> parent;
  std::vector<std::optional<NodeIndex>> child;

  std::size_t depth(NodeIndex v) const;
};

// Built from the join split of the graph: the larger side hangs under the
// smallest-id node of the other side, and the leftovers of that side are
// matched to depth-1 nodes in id order. A single node yields a root-only tree.
// nullopt when the graph has no join split.
std::optional<TwoLevelTree> bcc_spanning_tree(const NetworkConfig& cfg);

// depth <= 2, <= 1 child per depth-1 node, spans every node, edges in the graph.
bool is_valid_two_level_tree(const Graph& g, const TwoLevelTree& tree);

}  // namespace diplab
