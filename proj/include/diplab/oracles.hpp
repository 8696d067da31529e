#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "diplab/graph.hpp"
#include "diplab/parallel.hpp"

namespace diplab {

enum class GraphClass { cograph, distance_hereditary };

// Exhaustive search for an induced four-node path. Returns (a, b, c, d) with
// path a-b-c-d when one exists.
std::optional<std::array<NodeIndex, 4>> find_induced_p4(const Graph& g);

// Twin elimination down to one node.
bool is_cograph_by_twins(const Graph& g);

// P4-freeness, computed both by exhaustive P4 search and by twin elimination;
// throws std::logic_error if the two disagree.
bool is_cograph_oracle(const Graph& g);

// Distance-preservation in every connected induced subgraph. n <= 10.
// Throws InvalidArgument when disconnected and SizeLimit above 10 nodes.
bool dh_definitional_check(const Graph& g);

// Pruning-sequence based recognition; for n <= 8 also cross-checked against
// dh_definitional_check (std::logic_error on disagreement).
bool is_dh_oracle(const Graph& g);

bool is_member(const Graph& g, GraphClass cls);

// Bipartition (V1, V2) with every V1-V2 pair adjacent, where V1 is the
// complement component containing node 0. nullopt when the complement is
// connected or n < 2.
std::optional<std::pair<NodeSet, NodeSet>> join_split(const Graph& g);

// Exhaustive k-subset scan for a chordless cycle on k nodes.
std::optional<std::vector<NodeIndex>> find_induced_cycle(const Graph& g, std::size_t k);

// Graph on n nodes whose edge set is the bit pattern `mask` over the pairs
// (0,1),(0,2),...,(n-2,n-1) in that order.
Graph graph_from_mask(std::size_t n, std::uint64_t mask);

struct OracleAgreement {
  std::uint64_t graphs = 0;      // graphs examined
  std::uint64_t members = 0;     // graphs in the class
  std::uint64_t mismatches = 0;  // the two methods disagreed
};

// Compares the exhaustive P4 search with twin elimination over all labelled
// graphs on n nodes.
OracleAgreement cograph_oracle_agreement(std::size_t n, ExecPolicy policy);

// Compares pruning-based recognition with the definitional check over all
// connected labelled graphs on n nodes.
OracleAgreement dh_oracle_agreement(std::size_t n, ExecPolicy policy);

}  // namespace diplab
