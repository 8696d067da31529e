#include "diplab/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "diplab/errors.hpp"

namespace diplab {

Graph::Graph(std::size_t n) {
  if (n == 0) throw InvalidArgument("graph must have at least one node");
  rows_.assign(n, NodeSet(n));
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_pair(NodeIndex u, NodeIndex v) const {
  if (u >= size() || v >= size()) {
    throw OutOfRange("edge endpoint out of range: " + std::to_string(u) + "," +
                     std::to_string(v));
  }
  if (u == v) throw InvalidArgument("self-loop on node " + std::to_string(u));
}

std::vector<NodeIndex> Graph::neighbor_list(NodeIndex u) const {
  std::vector<NodeIndex> out;
  out.reserve(degree(u));
  const auto& row = rows_[u];
  for (auto v = row.find_first(); v != NodeSet::npos; v = row.find_next(v)) out.push_back(v);
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : rows_) twice += row.count();
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < size(); ++u) {
    const auto& row = rows_[u];
    for (auto v = row.find_next(u); v != NodeSet::npos; v = row.find_next(v)) {
      out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::add_edge(NodeIndex u, NodeIndex v) {
  check_pair(u, v);
  rows_[u].set(v);
  rows_[v].set(u);
}

void Graph::remove_edge(NodeIndex u, NodeIndex v) {
  check_pair(u, v);
  rows_[u].reset(v);
  rows_[v].reset(u);
}

void Graph::toggle_edge(NodeIndex u, NodeIndex v) {
  check_pair(u, v);
  rows_[u].flip(v);
  rows_[v].flip(u);
}

NodeIndex Graph::add_node() {
  for (auto& row : rows_) row.push_back(false);
  rows_.emplace_back(rows_.size() + 1);
  return rows_.size() - 1;
}

Graph induced_subgraph(const Graph& g, const NodeSet& nodes) {
  std::vector<NodeIndex> list;
  for (auto v = nodes.find_first(); v != NodeSet::npos; v = nodes.find_next(v)) list.push_back(v);
  return induced_subgraph(g, list);
}

Graph induced_subgraph(const Graph& g, std::span<const NodeIndex> nodes) {
  if (nodes.empty()) throw InvalidArgument("induced_subgraph: empty node set");
  std::vector<NodeIndex> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("induced_subgraph: repeated node");
  }
  if (sorted.back() >= g.size()) throw InvalidArgument("induced_subgraph: node out of range");
  Graph h(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (g.adjacent(sorted[i], sorted[j])) h.add_edge(i, j);
    }
  }
  return h;
}

Graph complement(const Graph& g) {
  Graph h(g.size());
  for (NodeIndex u = 0; u < g.size(); ++u) {
    for (NodeIndex v = u + 1; v < g.size(); ++v) {
      if (!g.adjacent(u, v)) h.add_edge(u, v);
    }
  }
  return h;
}

Graph relabel(const Graph& g, std::span<const NodeIndex> mapping) {
  if (mapping.size() != g.size()) throw InvalidArgument("relabel: mapping size mismatch");
  Graph h(g.size());
  for (auto [u, v] : g.edges()) h.add_edge(mapping[u], mapping[v]);
  return h;
}

bool is_connected(const Graph& g, const NodeSet& alive) {
  const auto start = alive.find_first();
  if (start == NodeSet::npos) return true;
  NodeSet seen(g.size());
  NodeSet frontier(g.size());
  frontier.set(start);
  seen.set(start);
  NodeSet next(g.size());
  while (frontier.any()) {
    next.reset();
    for (auto v = frontier.find_first(); v != NodeSet::npos; v = frontier.find_next(v)) {
      next |= g.neighbors(v);
    }
    next &= alive;
    next -= seen;
    seen |= next;
    frontier = next;
  }
  return seen == alive;
}

bool is_connected(const Graph& g) { return is_connected(g, g.all_nodes()); }

std::vector<NodeSet> connected_components(const Graph& g) {
  std::vector<NodeSet> out;
  NodeSet unassigned = g.all_nodes();
  while (unassigned.any()) {
    const auto start = unassigned.find_first();
    NodeSet comp(g.size());
    comp.set(start);
    std::deque<NodeIndex> queue{start};
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      const auto& row = g.neighbors(v);
      for (auto w = row.find_first(); w != NodeSet::npos; w = row.find_next(w)) {
        if (!comp.test(w)) {
          comp.set(w);
          queue.push_back(w);
        }
      }
    }
    unassigned -= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::size_t> bfs_distances(const Graph& g, NodeIndex source) {
  std::vector<std::size_t> dist(g.size(), std::numeric_limits<std::size_t>::max());
  dist[source] = 0;
  std::deque<NodeIndex> queue{source};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const auto& row = g.neighbors(v);
    for (auto w = row.find_first(); w != NodeSet::npos; w = row.find_next(w)) {
      if (dist[w] == std::numeric_limits<std::size_t>::max()) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace graphs {

Graph path(std::size_t n) {
  Graph g(n);
  for (NodeIndex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least 3 nodes");
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeIndex i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

}  // namespace graphs
}  // namespace diplab
