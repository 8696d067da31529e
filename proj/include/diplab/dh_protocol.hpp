#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "diplab/engine.hpp"
#include "diplab/permutation.hpp"
#include "diplab/pruning.hpp"

namespace diplab {

enum class DhRole { pending = 0, false_twin = 1, true_twin = 2, final = 3 };

// First Merlin round.
struct DhCertR1 {
  Element pos = 0;
  std::optional<NodeId> ant;  // later neighbour with the smallest position
  DhRole role = DhRole::final;
  std::optional<NodeId> pending_target;
  std::optional<NodeId> twin;
  std::optional<NodeId> ant_of_twin;  // node that replays the twin's history
  Element twins_count = 0;
  Element pending_count = 0;
  std::optional<std::pair<NodeId, Element>> m_leaf;  // earliest pending child (id, pos)
  std::optional<NodeId> co_twin;                     // next twin of the same node, or that node
  std::optional<Element> between_count;              // its pendings between me and co_twin
  std::optional<Element> first_twin_pos;
  Element pre_count = 0;  // pending children before the first twin
  bool verifier_flag = false;  // pos == n - 1: verifies the final node
  PermFields perm;             // subtree_sum travels in round three

  friend bool operator==(const DhCertR1&, const DhCertR1&) = default;
};

// Third Merlin round.
struct DhCertR3 {
  Element a0 = 0, b0 = 0;
  Element a_pi = 0, b_pi = 0;  // vector when the node is pruned
  Element p_total = 0;         // sum of a_pi over pending children
  Element p0 = 0;              // same, before the first twin
  std::optional<Element> s_interval;  // twin only: the twin's pendings up to co_twin
  Element subtree_sum = 0;

  friend bool operator==(const DhCertR3&, const DhCertR3&) = default;
};

const Schema& dh_schema_r1();
const Schema& dh_schema_r3();
BitString encode(const DhCertR1& cert, const Encoding& enc);
BitString encode(const DhCertR3& cert, const Encoding& enc);
DhCertR1 decode_dh_r1(const BitString& bits, const Encoding& enc);
DhCertR3 decode_dh_r3(const BitString& bits, const Encoding& enc);

// Sequence the honest prover commits to: the pruning sequence, or a total
// best-effort one with forced pending claims when the graph is not a member.
PruningSequence dh_prover_sequence(const Graph& g);
// A false order built from nearest twins.
PruningSequence dh_forged_sequence(const Graph& g);

std::vector<DhCertR1> prove_dh_round1(const NetworkConfig& cfg, const PruningSequence& seq);
std::vector<DhCertR3> prove_dh_round3(const NetworkConfig& cfg, const PruningSequence& seq,
                                      Element t, const Field& f);

// Rejection tags: decode, range, perm-tree, perm-root-identity, initial-vector,
// structure, pending-role, twin-role, pending-children, replay-compare,
// replay-conservation.
class DhProtocol : public Protocol {
 public:
  std::string name() const override { return "dh"; }
  std::vector<RoundKind> shape() const override {
    return {RoundKind::merlin, RoundKind::shared_random, RoundKind::merlin};
  }
  std::optional<GraphClass> language() const override { return GraphClass::distance_hereditary; }
  const std::vector<Schema>& schemas() const override {
    static const std::vector<Schema> all{dh_schema_r1(), dh_schema_r3()};
    return all;
  }

  NodeDecision decide(const LocalView& view, std::span<const BitString> heard) const override;
  Certificates honest(const ProverContext& ctx) const override;
  Certificates forged(const ProverContext& ctx) const override;

  static Certificates certify_sequence(const ProverContext& ctx, const PruningSequence& seq);
};

}  // namespace diplab
