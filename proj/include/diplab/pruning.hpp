#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "diplab/graph.hpp"

namespace diplab {

enum class PruneRole { false_twin, true_twin, pending };

std::string_view to_string(PruneRole role);

struct PruningStep {
  NodeIndex pruned;
  PruneRole role;
  // Twin partner or pending attachment; survives `pruned`.
  NodeIndex target;

  friend bool operator==(const PruningStep&, const PruningStep&) = default;
};

// n-1 steps removing every node but one. position(v) is the 1-based step at
// which v is pruned; the survivor has position n.
class PruningSequence {
 public:
  PruningSequence(std::size_t n, std::vector<PruningStep> steps);

  std::size_t node_count() const { return positions_.size(); }
  const std::vector<PruningStep>& steps() const { return steps_; }
  std::size_t position(NodeIndex v) const { return positions_[v]; }
  const std::vector<std::size_t>& positions() const { return positions_; }
  NodeIndex survivor() const { return survivor_; }
  // Node pruned at 1-based position pos (pos == n gives the survivor).
  NodeIndex node_at(std::size_t pos) const { return order_[pos - 1]; }

  friend bool operator==(const PruningSequence& a, const PruningSequence& b) {
    return a.steps_ == b.steps_ && a.positions_ == b.positions_;
  }

 private:
  std::vector<PruningStep> steps_;
  std::vector<std::size_t> positions_;
  std::vector<NodeIndex> order_;
  NodeIndex survivor_ = 0;
};

// Replays the sequence on g and checks every step's role against the remaining
// graph. Returns the index of the first bad step, or nullopt when valid.
std::optional<std::size_t> first_invalid_step(const Graph& g, const PruningSequence& seq);
inline bool is_valid_sequence(const Graph& g, const PruningSequence& seq) {
  return !first_invalid_step(g, seq).has_value();
}

// Greedy pending/twin elimination; tie-break on smallest pruned index, then
// smallest target, then TrueTwin < FalseTwin < Pending. Returns nullopt iff g
// is not distance-hereditary. Throws InvalidArgument on disconnected input.
std::optional<PruningSequence> compute_pruning_sequence(const Graph& g);

// Same loop restricted to twins (any graph, connected or not). Returns nullopt
// iff g is not a cograph.
std::optional<PruningSequence> compute_twin_sequence(const Graph& g);

// How a best-effort elimination continues when no genuine move exists.
enum class StuckRule {
  stop,           // give up (the honest-oracle behaviour)
  force_pending,  // claim the smallest remaining node pending on its smallest neighbour
  nearest_twin,   // claim the pair with the smallest neighbourhood difference as twins
};

// Total version of the elimination loop used by provers facing non-members.
// With StuckRule::stop the result is nullopt exactly when the loop gets stuck.
std::optional<PruningSequence> eliminate(const Graph& g, bool allow_pending, StuckRule rule);

// Nodes left when the genuine elimination loop gets stuck (one node on success).
NodeSet stuck_remainder(const Graph& g, bool allow_pending);

}  // namespace diplab
