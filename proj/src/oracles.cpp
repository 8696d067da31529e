#include "diplab/oracles.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "diplab/errors.hpp"
#include "diplab/pruning.hpp"

namespace diplab {

std::optional<std::array<NodeIndex, 4>> find_induced_p4(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 4) return std::nullopt;
  NodeSet ends_b(n);
  NodeSet ends_c(n);
  for (auto [b, c] : g.edges()) {
    // a ~ b only, d ~ c only, a !~ d
    ends_b = g.neighbors(b);
    ends_b -= g.neighbors(c);
    ends_b.reset(c);
    if (ends_b.none()) continue;
    ends_c = g.neighbors(c);
    ends_c -= g.neighbors(b);
    ends_c.reset(b);
    if (ends_c.none()) continue;
    for (auto a = ends_b.find_first(); a != NodeSet::npos; a = ends_b.find_next(a)) {
      if (!ends_c.is_subset_of(g.neighbors(a))) {
        for (auto d = ends_c.find_first(); d != NodeSet::npos; d = ends_c.find_next(d)) {
          if (!g.adjacent(a, d)) return std::array<NodeIndex, 4>{a, b, c, d};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_cograph_by_twins(const Graph& g) { return compute_twin_sequence(g).has_value(); }

bool is_cograph_oracle(const Graph& g) {
  const bool p4_free = !find_induced_p4(g).has_value();
  const bool reducible = is_cograph_by_twins(g);
  if (p4_free != reducible) {
    throw std::logic_error("cograph oracles disagree: P4 search and twin elimination");
  }
  return p4_free;
}

namespace {

using Mask = std::uint32_t;

struct SmallGraph {
  std::size_t n;
  std::array<Mask, 10> nbr{};
};

SmallGraph to_small(const Graph& g) {
  SmallGraph s{g.size()};
  for (NodeIndex v = 0; v < g.size(); ++v) {
    for (NodeIndex w : g.neighbor_list(v)) s.nbr[v] |= Mask{1} << w;
  }
  return s;
}

Mask expand(const SmallGraph& g, Mask frontier) {
  Mask out = 0;
  while (frontier) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    out |= g.nbr[v];
  }
  return out;
}

bool connected_within(const SmallGraph& g, Mask set) {
  if (set == 0) return true;
  Mask reached = set & (~set + 1);
  Mask frontier = reached;
  while (frontier) {
    frontier = expand(g, frontier) & set & ~reached;
    reached |= frontier;
  }
  return reached == set;
}

}  // namespace

bool dh_definitional_check(const Graph& g) {
  if (g.size() > 10) throw SizeLimit("dh_definitional_check: n > 10");
  if (!is_connected(g)) throw InvalidArgument("dh_definitional_check: graph is disconnected");
  const SmallGraph s = to_small(g);
  const std::size_t n = s.n;
  const Mask full = (Mask{1} << n) - 1;

  // Layers of the BFS in G: ball[u][d] = nodes within distance d of u.
  std::array<std::array<Mask, 11>, 10> ball{};
  for (std::size_t u = 0; u < n; ++u) {
    Mask reached = Mask{1} << u;
    for (std::size_t d = 0; d <= n; ++d) {
      ball[u][d] = reached;
      reached |= expand(s, reached);
    }
  }

  for (Mask subset = 1; subset <= full; ++subset) {
    if (std::popcount(subset) < 3 || !connected_within(s, subset)) continue;
    for (Mask rest = subset; rest;) {
      const int u = std::countr_zero(rest);
      rest &= rest - 1;
      Mask reached = Mask{1} << u;
      for (std::size_t d = 1; reached != subset; ++d) {
        reached |= expand(s, reached) & subset;
        // balls in H match balls in G restricted to the subset
        if (reached != (ball[u][d] & subset)) return false;
      }
    }
  }
  return true;
}

bool is_dh_oracle(const Graph& g) {
  const bool by_pruning = compute_pruning_sequence(g).has_value();
  if (g.size() <= 8 && by_pruning != dh_definitional_check(g)) {
    throw std::logic_error("distance-hereditary oracles disagree");
  }
  return by_pruning;
}

bool is_member(const Graph& g, GraphClass cls) {
  return cls == GraphClass::cograph ? is_cograph_oracle(g) : is_dh_oracle(g);
}

std::optional<std::pair<NodeSet, NodeSet>> join_split(const Graph& g) {
  if (g.size() < 2) return std::nullopt;
  const auto comps = connected_components(complement(g));
  if (comps.size() < 2) return std::nullopt;
  NodeSet first = comps.front();
  for (const auto& c : comps) {
    if (c.test(0)) first = c;
  }
  NodeSet second = g.all_nodes();
  second -= first;
  return std::make_pair(std::move(first), std::move(second));
}

std::optional<std::vector<NodeIndex>> find_induced_cycle(const Graph& g, std::size_t k) {
  const std::size_t n = g.size();
  if (k < 3 || k > n) return std::nullopt;
  std::vector<NodeIndex> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  NodeSet chosen(n);
  while (true) {
    chosen.reset();
    for (auto v : pick) chosen.set(v);
    bool two_regular = true;
    for (auto v : pick) {
      if ((g.neighbors(v) & chosen).count() != 2) {
        two_regular = false;
        break;
      }
    }
    if (two_regular && is_connected(g, chosen)) {
      std::vector<NodeIndex> order{pick[0]};
      NodeIndex prev = pick[0];
      NodeIndex cur = (g.neighbors(pick[0]) & chosen).find_first();
      while (cur != pick[0]) {
        order.push_back(cur);
        const NodeSet around = g.neighbors(cur) & chosen;
        NodeIndex next = around.find_first();
        if (next == prev) next = around.find_next(next);
        prev = cur;
        cur = next;
      }
      return order;
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return std::nullopt;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  std::size_t bit = 0;
  for (NodeIndex u = 0; u < n; ++u) {
    for (NodeIndex v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

namespace {

std::uint64_t mask_count(std::size_t n) {
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs >= 40) throw SizeLimit("exhaustive enumeration limited to n <= 9");
  return std::uint64_t{1} << pairs;
}

}  // namespace

OracleAgreement cograph_oracle_agreement(std::size_t n, ExecPolicy policy) {
  const auto total = static_cast<std::int64_t>(mask_count(n));
  std::uint64_t members = 0;
  std::uint64_t mismatches = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : members, mismatches) \
    if (policy == ExecPolicy::parallel)
  for (std::int64_t mask = 0; mask < total; ++mask) {
    const Graph g = graph_from_mask(n, static_cast<std::uint64_t>(mask));
    const bool p4_free = !find_induced_p4(g).has_value();
    const bool reducible = is_cograph_by_twins(g);
    members += p4_free ? 1 : 0;
    mismatches += p4_free != reducible ? 1 : 0;
  }
  return {static_cast<std::uint64_t>(total), members, mismatches};
}

OracleAgreement dh_oracle_agreement(std::size_t n, ExecPolicy policy) {
  const auto total = static_cast<std::int64_t>(mask_count(n));
  std::uint64_t graphs = 0;
  std::uint64_t members = 0;
  std::uint64_t mismatches = 0;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : graphs, members, mismatches) \
    if (policy == ExecPolicy::parallel)
  for (std::int64_t mask = 0; mask < total; ++mask) {
    const Graph g = graph_from_mask(n, static_cast<std::uint64_t>(mask));
    if (!is_connected(g)) continue;
    const bool by_pruning = compute_pruning_sequence(g).has_value();
    const bool by_definition = dh_definitional_check(g);
    graphs += 1;
    members += by_pruning ? 1 : 0;
    mismatches += by_pruning != by_definition ? 1 : 0;
  }
  return {graphs, members, mismatches};
}

}  // namespace diplab
