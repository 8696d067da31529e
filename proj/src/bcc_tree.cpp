#include "diplab/bcc_tree.hpp"

#include <algorithm>

#include "diplab/oracles.hpp"

namespace diplab {

std::size_t TwoLevelTree::depth(NodeIndex v) const {
  std::size_t d = 0;
  while (parent[v]) {
    v = *parent[v];
    ++d;
  }
  return d;
}

namespace {

std::vector<NodeIndex> by_id(const NetworkConfig& cfg, const NodeSet& side) {
  std::vector<NodeIndex> out;
  for (auto v = side.find_first(); v != NodeSet::npos; v = side.find_next(v)) out.push_back(v);
  std::sort(out.begin(), out.end(), [&](NodeIndex a, NodeIndex b) { return cfg.id(a) < cfg.id(b); });
  return out;
}

}  // namespace

std::optional<TwoLevelTree> bcc_spanning_tree(const NetworkConfig& cfg) {
  const std::size_t n = cfg.size();
  TwoLevelTree tree{0, std::vector<std::optional<NodeIndex>>(n),
                    std::vector<std::optional<NodeIndex>>(n)};
  if (n == 1) return tree;
  auto split = join_split(cfg.graph());
  if (!split) return std::nullopt;

  auto first = by_id(cfg, split->first);
  auto second = by_id(cfg, split->second);
  // first := larger side; ties go to the side holding the smallest id
  if (second.size() > first.size() ||
      (second.size() == first.size() && cfg.id(second.front()) < cfg.id(first.front()))) {
    std::swap(first, second);
  }
  tree.root = second.front();
  for (NodeIndex v : first) tree.parent[v] = tree.root;
  for (std::size_t i = 1; i < second.size(); ++i) {
    const NodeIndex mid = first[i - 1];
    tree.parent[second[i]] = mid;
    tree.child[mid] = second[i];
  }
  return tree;
}

bool is_valid_two_level_tree(const Graph& g, const TwoLevelTree& tree) {
  const std::size_t n = g.size();
  if (tree.parent.size() != n || tree.child.size() != n || tree.root >= n) return false;
  if (tree.parent[tree.root]) return false;
  std::vector<std::size_t> children(n, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    if (v == tree.root) continue;
    const auto p = tree.parent[v];
    if (!p || *p >= n || !g.adjacent(v, *p)) return false;
    if (*p != tree.root) {
      const auto pp = tree.parent[*p];
      if (!pp || *pp != tree.root) return false;
      if (tree.child[*p] != v) return false;
      ++children[*p];
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (children[v] > 1) return false;
    if (tree.child[v] && tree.parent[*tree.child[v]] != v) return false;
  }
  return true;
}

}  // namespace diplab
