#include "diplab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "diplab/errors.hpp"
#include "diplab/random.hpp"

namespace diplab {

namespace {

// Splits `nodes` into 2..4 nonempty random parts, joins them when `join`.
void build_cotree(Graph& g, std::span<const NodeIndex> nodes, bool join, Rng& rng) {
  if (nodes.size() < 2) return;
  const std::size_t max_parts = std::min<std::size_t>(4, nodes.size());
  const std::size_t parts = 2 + rng.below(max_parts - 1);
  // distinct cut points in [1, size)
  std::vector<std::size_t> cuts(nodes.size() - 1);
  std::iota(cuts.begin(), cuts.end(), std::size_t{1});
  rng.shuffle(cuts);
  cuts.resize(parts - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(nodes.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto part = nodes.subspan(cuts[i], cuts[i + 1] - cuts[i]);
    build_cotree(g, part, !join, rng);
    if (!join) continue;
    for (std::size_t j = cuts[i + 1]; j < nodes.size(); ++j) {
      for (NodeIndex u : part) g.add_edge(u, nodes[j]);
    }
  }
}

Graph random_gnp(std::size_t n, Rng& rng) {
  Graph g(n);
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (rng.next() >> 63) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

NetworkConfig gen_random_cograph(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("gen_random_cograph: n must be >= 1");
  Rng rng(seed);
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  rng.shuffle(order);
  Graph g(n);
  build_cotree(g, order, true, rng);
  return NetworkConfig(std::move(g));
}

DhInstance gen_random_dh(std::size_t n, std::uint64_t seed, DhWeights weights) {
  if (n == 0) throw InvalidArgument("gen_random_dh: n must be >= 1");
  const double w[3] = {weights.pending, weights.false_twin, weights.true_twin};
  double total = 0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0) throw InvalidArgument("gen_random_dh: weights must be >= 0");
    total += x;
  }
  if (n > 1 && w[0] + w[2] <= 0) {
    throw InvalidArgument("gen_random_dh: false-twin growth alone cannot stay connected");
  }

  Rng rng(seed);
  Graph grown(n);
  std::vector<PruningStep> growth;  // growth[i-1] attaches node i
  for (NodeIndex fresh = 1; fresh < n; ++fresh) {
    const NodeIndex anchor = rng.below(fresh);
    PruneRole role;
    do {
      const double r = rng.unit() * total;
      role = r < w[0] ? PruneRole::pending
             : r < w[0] + w[1] ? PruneRole::false_twin
                               : PruneRole::true_twin;
    } while (role == PruneRole::false_twin && grown.degree(anchor) == 0);
    if (role == PruneRole::pending) {
      grown.add_edge(fresh, anchor);
    } else {
      for (NodeIndex u : grown.neighbor_list(anchor)) grown.add_edge(fresh, u);
      if (role == PruneRole::true_twin) grown.add_edge(fresh, anchor);
    }
    growth.push_back({fresh, role, anchor});
  }

  std::vector<NodeIndex> label(n);
  std::iota(label.begin(), label.end(), NodeIndex{0});
  rng.shuffle(label);
  std::vector<PruningStep> steps;
  for (auto it = growth.rbegin(); it != growth.rend(); ++it) {
    steps.push_back({label[it->pruned], it->role, label[it->target]});
  }
  return {NetworkConfig(relabel(grown, label)), PruningSequence(n, std::move(steps))};
}

NetworkConfig gen_nonmember(GraphClass cls, std::size_t n, std::uint64_t seed) {
  const std::size_t minimum = cls == GraphClass::cograph ? 4 : 5;
  if (n < minimum) {
    throw InvalidArgument("gen_nonmember: every graph on " + std::to_string(n) +
                          " nodes is a member; need n >= " + std::to_string(minimum));
  }
  Rng rng(seed);
  while (true) {
    Graph g = random_gnp(n, rng);
    if (is_connected(g) && !is_member(g, cls)) return NetworkConfig(std::move(g));
  }
}

namespace {

void require_cograph(const Graph& f, const char* what) {
  if (!is_cograph_oracle(f)) throw InvalidArgument(std::string(what) + " must be a cograph");
}

struct GadgetIds {
  std::vector<NodeId> f;
  NodeId x, b, c, d;
};

GadgetIds gadget_ids(std::size_t f_size, const GadgetLabels& l) {
  const std::size_t big = l.label_space;
  if (f_size > big || l.block >= big || l.b >= big || l.c >= big || l.d >= big || 3 * big > big * big) {
    throw InvalidArgument("gadget labels do not fit the label space");
  }
  const NodeId sq = NodeId{big} * big;
  GadgetIds ids;
  for (std::size_t j = 0; j < f_size; ++j) ids.f.push_back(l.base + l.block * big + j + 1);
  ids.b = l.base + sq + l.b + 1;
  ids.c = l.base + sq + big + l.c + 1;
  ids.d = l.base + sq + 2 * big + l.d + 1;
  ids.x = l.base + 2 * sq + l.block + 1;
  return ids;
}

}  // namespace

NetworkConfig gen_yes_gadget(const Graph& f, GadgetLabels labels) {
  require_cograph(f, "gadget base graph");
  const std::size_t k = f.size();
  if (labels.label_space == 0) {
    labels.label_space = std::max<std::size_t>({3, k, labels.block + 1, labels.b + 1,
                                                labels.c + 1, labels.d + 1});
  }
  const GadgetIds ids = gadget_ids(k, labels);
  Graph g(k + 4);
  for (auto [u, v] : f.edges()) g.add_edge(u, v);
  const NodeIndex b = k, c = k + 1, d = k + 2, x = k + 3;
  g.add_edge(b, c);
  g.add_edge(c, d);
  g.add_edge(b, d);
  for (NodeIndex v = 0; v < x; ++v) g.add_edge(v, x);
  std::vector<NodeId> all = ids.f;
  all.insert(all.end(), {ids.b, ids.c, ids.d, ids.x});
  return NetworkConfig(std::move(g), std::move(all));
}

NetworkConfig gen_fooling_instance(const Graph& f1, const Graph& f2, std::size_t label_space) {
  require_cograph(f1, "first gadget graph");
  require_cograph(f2, "second gadget graph");
  const std::size_t k1 = f1.size(), k2 = f2.size();
  if (label_space == 0) label_space = std::max<std::size_t>({3, k1, k2});
  const GadgetIds half[2] = {
      gadget_ids(k1, {label_space, 0, 0, 0, 0, 0}),
      gadget_ids(k2, {label_space, 1, 1, 1, 1, 0}),
  };
  const std::size_t offset[2] = {0, k1};
  const std::size_t first_extra = k1 + k2;
  auto x = [&](int i) { return first_extra + 4 * i; };
  auto b = [&](int i) { return first_extra + 4 * (i % 2) + 1; };
  auto c = [&](int i) { return first_extra + 4 * (i % 2) + 2; };
  auto d = [&](int i) { return first_extra + 4 * (i % 2) + 3; };

  Graph g(first_extra + 8);
  std::vector<NodeId> ids(first_extra + 8);
  const Graph* fs[2] = {&f1, &f2};
  for (int i = 0; i < 2; ++i) {
    for (auto [u, v] : fs[i]->edges()) g.add_edge(offset[i] + u, offset[i] + v);
    for (NodeIndex u = 0; u < fs[i]->size(); ++u) {
      g.add_edge(offset[i] + u, x(i));
      ids[offset[i] + u] = half[i].f[u];
    }
    g.add_edge(x(i), b(i));
    g.add_edge(x(i), c(i));
    g.add_edge(x(i), d(i + 1));
    g.add_edge(b(i), c(i + 1));
    g.add_edge(c(i), d(i + 1));
    g.add_edge(d(i), b(i + 1));
    ids[x(i)] = half[i].x;
    ids[b(i)] = half[i].b;
    ids[c(i)] = half[i].c;
    ids[d(i)] = half[i].d;
  }
  return NetworkConfig(std::move(g), std::move(ids));
}

}  // namespace diplab
