#include <algorithm>
#include <array>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"

#include "diplab/errors.hpp"
#include "diplab/oracles.hpp"
#include "diplab/pruning.hpp"

using namespace diplab;
using diplab::test::graph_of;

namespace {

// Independent cograph test: every induced subgraph on two or more nodes is
// disconnected or has a disconnected complement.
bool cograph_by_complements(const Graph& g) {
  if (g.size() == 1) return true;
  const Graph co = complement(g);
  for (const Graph* h : {&g, &co}) {
    const auto parts = connected_components(*h);
    if (parts.size() > 1) {
      for (const auto& part : parts) {
        if (!cograph_by_complements(induced_subgraph(g, part))) return false;
      }
      return true;
    }
  }
  return false;
}

bool bipartite(const Graph& g) {
  const auto d = bfs_distances(g, 0);
  for (auto [u, v] : g.edges()) {
    if (d[u] % 2 == d[v] % 2) return false;
  }
  return true;
}

// Independent definitional check: BFS inside every connected induced subgraph.
bool dh_by_subgraph_bfs(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> full(n);
  for (NodeIndex v = 0; v < n; ++v) full[v] = bfs_distances(g, v);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<NodeIndex> nodes;
    for (NodeIndex v = 0; v < n; ++v) {
      if ((mask >> v) & 1) nodes.push_back(v);
    }
    const Graph h = induced_subgraph(g, nodes);
    if (!is_connected(h)) continue;
    for (NodeIndex i = 0; i < nodes.size(); ++i) {
      const auto d = bfs_distances(h, i);
      for (NodeIndex j = 0; j < nodes.size(); ++j) {
        if (d[j] != full[nodes[i]][nodes[j]]) return false;
      }
    }
  }
  return true;
}

// Forbidden induced subgraphs: house, gem, domino and holes, recognised by
// edge count, degree sequence and triangle count.
bool dh_by_forbidden_subgraphs(const Graph& g) {
  const std::size_t n = g.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<NodeIndex> nodes;
    for (NodeIndex v = 0; v < n; ++v) {
      if ((mask >> v) & 1) nodes.push_back(v);
    }
    const std::size_t k = nodes.size();
    if (k < 5) continue;
    const Graph h = induced_subgraph(g, nodes);
    if (!is_connected(h)) continue;
    std::vector<std::size_t> deg;
    for (NodeIndex v = 0; v < k; ++v) deg.push_back(h.degree(v));
    std::sort(deg.begin(), deg.end());
    std::size_t triangles = 0;
    for (NodeIndex a = 0; a < k; ++a)
      for (NodeIndex b = a + 1; b < k; ++b)
        for (NodeIndex c = b + 1; c < k; ++c)
          triangles += h.adjacent(a, b) && h.adjacent(b, c) && h.adjacent(a, c);
    const std::size_t m = h.edge_count();
    const bool hole = m == k && deg.front() == 2 && deg.back() == 2;
    const bool house = k == 5 && m == 6 && deg == std::vector<std::size_t>{2, 2, 2, 3, 3} &&
                       triangles == 1;
    const bool gem = k == 5 && m == 7 && deg == std::vector<std::size_t>{2, 2, 3, 3, 4};
    const bool domino = k == 6 && m == 7 && deg == std::vector<std::size_t>{2, 2, 2, 2, 3, 3} &&
                        bipartite(h);
    if (hole || house || gem || domino) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("cograph examples") {
    CHECK_FALSE(is_cograph_oracle(graphs::path(4)));
    CHECK(is_cograph_oracle(graphs::complete(3)));
    CHECK_FALSE(is_cograph_oracle(graphs::cycle(6)));
    CHECK(is_cograph_oracle(graphs::cycle(4)));
    CHECK(is_cograph_oracle(Graph(3)));
    const auto p4 = find_induced_p4(graphs::path(4));
    REQUIRE(p4.has_value());
    const auto [a, b, c, d] = *p4;
    const Graph p = graphs::path(4);
    CHECK(p.adjacent(a, b));
    CHECK(p.adjacent(b, c));
    CHECK(p.adjacent(c, d));
    CHECK_FALSE(p.adjacent(a, c));
    CHECK_FALSE(find_induced_p4(graphs::complete(5)).has_value());
  }

  TEST_CASE("distance-hereditary examples") {
    CHECK_FALSE(is_dh_oracle(graphs::cycle(5)));
    CHECK(is_dh_oracle(graphs::path(4)));
    CHECK(is_dh_oracle(graphs::complete(4)));
    CHECK_FALSE(is_dh_oracle(diplab::test::house()));
    CHECK_FALSE(is_dh_oracle(diplab::test::gem()));
    CHECK_FALSE(is_dh_oracle(diplab::test::domino()));
    CHECK_THROWS_AS(is_dh_oracle(Graph(2)), InvalidArgument);
  }

  TEST_CASE("definitional check") {
    CHECK_FALSE(dh_definitional_check(graphs::cycle(6)));
    CHECK(dh_definitional_check(graphs::star(4)));
    CHECK(dh_definitional_check(graph_of(5, {{1, 2}, {2, 3}, {2, 4}, {4, 5}})));
    CHECK(dh_definitional_check(graphs::complete(4)));
    CHECK_THROWS_AS(dh_definitional_check(graphs::path(11)), SizeLimit);
    CHECK_THROWS_AS(dh_definitional_check(Graph(3)), InvalidArgument);
  }

  TEST_CASE("definitional check matches subgraph BFS on all connected graphs up to 6 nodes") {
    for (std::size_t n = 1; n <= 6; ++n) {
      const std::uint64_t pairs = n * (n - 1) / 2;
      std::uint64_t checked = 0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); mask += (n == 6 ? 7 : 1)) {
        const Graph g = graph_from_mask(n, mask);
        if (!is_connected(g)) continue;
        ++checked;
        REQUIRE(dh_definitional_check(g) == dh_by_subgraph_bfs(g));
      }
      CHECK(checked > 0);
    }
  }

  TEST_CASE("pruning recognition matches forbidden subgraphs on all connected 6-node graphs") {
    std::uint64_t members = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << 15); ++mask) {
      const Graph g = graph_from_mask(6, mask);
      if (!is_connected(g)) continue;
      const bool dh = compute_pruning_sequence(g).has_value();
      REQUIRE(dh == dh_by_forbidden_subgraphs(g));
      members += dh;
    }
    CHECK(members == dh_oracle_agreement(6, ExecPolicy::serial).members);
  }

  TEST_CASE("both cograph methods match the complement characterisation") {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask) {
        const Graph g = graph_from_mask(n, mask);
        const bool expected = cograph_by_complements(g);
        REQUIRE(is_cograph_by_twins(g) == expected);
        REQUIRE(find_induced_p4(g).has_value() == !expected);
      }
    }
  }

  TEST_CASE("labelled cograph counts") {
    // labelled cographs on 1..6 nodes: 1, 2, 8, 52, 472, 5504
    const std::array<std::uint64_t, 6> expected{1, 2, 8, 52, 472, 5504};
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto a = cograph_oracle_agreement(n, ExecPolicy::serial);
      CHECK(a.mismatches == 0);
      CHECK(a.members == expected[n - 1]);
      CHECK(a.graphs == (std::uint64_t{1} << (n * (n - 1) / 2)));
    }
  }

  TEST_CASE("agreement sweeps give identical serial and parallel results") {
    const auto s = dh_oracle_agreement(5, ExecPolicy::serial);
    const auto p = dh_oracle_agreement(5, ExecPolicy::parallel);
    CHECK(s.graphs == p.graphs);
    CHECK(s.members == p.members);
    CHECK(s.mismatches == 0);
    CHECK(p.mismatches == 0);
    const auto cs = cograph_oracle_agreement(5, ExecPolicy::serial);
    const auto cp = cograph_oracle_agreement(5, ExecPolicy::parallel);
    CHECK(cs.members == cp.members);
  }

  TEST_CASE("join split") {
    const auto k2 = join_split(graphs::complete(2));
    REQUIRE(k2.has_value());
    CHECK(k2->first.count() == 1);
    CHECK(k2->first.test(0));
    CHECK(k2->second.test(1));
    CHECK_FALSE(join_split(graphs::path(4)).has_value());
    const auto star = join_split(graphs::star(3));
    REQUIRE(star.has_value());
    CHECK(star->first.count() == 1);
    CHECK(star->first.test(0));
    CHECK(star->second.count() == 3);
    CHECK_FALSE(join_split(Graph(1)).has_value());
  }

  TEST_CASE("induced cycles") {
    const Graph d = diplab::test::domino();
    CHECK_FALSE(find_induced_cycle(d, 6).has_value());  // the chord 2-5 splits it
    const auto c = find_induced_cycle(d, 4);
    REQUIRE(c.has_value());
    CHECK(c->size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(d.adjacent((*c)[i], (*c)[(i + 1) % 4]));
      CHECK_FALSE(d.adjacent((*c)[i], (*c)[(i + 2) % 4]));
    }
    CHECK_FALSE(find_induced_cycle(graphs::complete(5), 4).has_value());
    CHECK(find_induced_cycle(graphs::cycle(7), 7).has_value());
  }

  TEST_CASE("mask enumeration order") {
    const Graph g = graph_from_mask(4, 0b000001);
    CHECK(g.adjacent(0, 1));
    CHECK(g.edge_count() == 1);
    const Graph h = graph_from_mask(4, 0b100000);
    CHECK(h.adjacent(2, 3));
    CHECK(graph_from_mask(3, 0b111) == graphs::complete(3));
  }
}
