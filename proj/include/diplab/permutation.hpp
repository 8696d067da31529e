#pragma once

#include <optional>
#include <vector>

#include "diplab/engine.hpp"

namespace diplab {

// Spanning-tree certificate that the claimed positions form a permutation of
// [1, n_claimed]. Structure goes in the first Merlin round, the sum of t^pos
// over each subtree in the last.
struct PermFields {
  NodeId root_id = 0;
  std::optional<NodeId> parent;
  Element dist = 0;
  Element subtree_count = 0;
  Element n_claimed = 0;
  Element subtree_sum = 0;

  friend bool operator==(const PermFields&, const PermFields&) = default;
};

struct PermNeighbor {
  NodeId id = 0;
  Element position = 0;
  PermFields perm;
};

// One node's checks. Rejection tags: range, perm-tree, perm-root-identity.
NodeDecision check_permutation(NodeId id, Element position, const PermFields& mine,
                               std::span<const PermNeighbor> heard, Element t, const Field& f);

// BFS tree from the smallest id with honest counts and sums for `positions`.
std::vector<PermFields> prove_permutation(const NetworkConfig& cfg,
                                          std::span<const Element> positions, Element t,
                                          const Field& f);

// Standalone dMAM protocol: round one carries (pos, structure), round three
// the subtree sums.
class PermutationProtocol : public Protocol {
 public:
  std::string name() const override { return "permutation"; }
  std::vector<RoundKind> shape() const override {
    return {RoundKind::merlin, RoundKind::shared_random, RoundKind::merlin};
  }
  std::optional<GraphClass> language() const override { return std::nullopt; }
  const std::vector<Schema>& schemas() const override;

  NodeDecision decide(const LocalView& view, std::span<const BitString> heard) const override;
  // Positions by rank of id.
  Certificates honest(const ProverContext& ctx) const override;

  // Certificates for arbitrary claimed positions with consistent sums.
  Certificates certify_positions(const ProverContext& ctx, std::span<const Element> positions) const;
};

// Claims a duplicated position for two nodes chosen from the run seed while
// keeping every count and subtree sum consistent with the claim.
class DuplicatePositionProver : public Prover {
 public:
  std::string name() const override { return "duplicate-position"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override;
};

}  // namespace diplab
