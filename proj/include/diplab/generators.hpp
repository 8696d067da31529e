#pragma once

#include <cstdint>
#include <optional>

#include "diplab/network.hpp"
#include "diplab/oracles.hpp"
#include "diplab/pruning.hpp"

namespace diplab {

// Connected random cograph from a random cotree whose root is a join.
NetworkConfig gen_random_cograph(std::size_t n, std::uint64_t seed);

// Relative probabilities of the growth rules.
struct DhWeights {
  double pending = 1.0;
  double false_twin = 1.0;
  double true_twin = 1.0;
};

struct DhInstance {
  NetworkConfig config;
  // Reverse of the growth order.
  PruningSequence sequence;
};

// Grows a connected distance-hereditary graph one pending node or twin at a time.
DhInstance gen_random_dh(std::size_t n, std::uint64_t seed, DhWeights weights = {});

// Connected G(n, 1/2) sample outside the class. n >= 4 for cographs, n >= 5
// for distance-hereditary graphs.
NetworkConfig gen_nonmember(GraphClass cls, std::size_t n, std::uint64_t seed);

// Identifier layout for the lower-bound gadgets over a label space of size N:
// block `a` of [1, N^2] for the cograph part, three disjoint N-blocks of
// [N^2 + 1, 2N^2] for b, c, d and [2N^2 + 1, 3N^2] for x. Everything is
// shifted by `base`.
struct GadgetLabels {
  std::size_t label_space = 0;  // 0: smallest N that fits
  std::size_t block = 0;
  std::size_t b = 0, c = 0, d = 0;
  NodeId base = 0;
};

// f plus a triangle {b, c, d}, all joined to one extra node x.
// Node order: f's nodes, then b, c, d, x.
NetworkConfig gen_yes_gadget(const Graph& f, GadgetLabels labels = {});

// Two gadget halves glued through their triangles into an induced 6-cycle.
// Node order: f1, f2, then x1, b1, c1, d1, x2, b2, c2, d2.
NetworkConfig gen_fooling_instance(const Graph& f1, const Graph& f2,
                                   std::size_t label_space = 0);

}  // namespace diplab
