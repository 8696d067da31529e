#include "diplab/pruning.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "diplab/errors.hpp"

namespace diplab {

std::string_view to_string(PruneRole role) {
  switch (role) {
    case PruneRole::false_twin: return "FalseTwin";
    case PruneRole::true_twin: return "TrueTwin";
    case PruneRole::pending: return "Pending";
  }
  return "?";
}

PruningSequence::PruningSequence(std::size_t n, std::vector<PruningStep> steps)
    : steps_(std::move(steps)), positions_(n, 0), order_(n) {
  if (n == 0) throw InvalidArgument("pruning sequence over an empty graph");
  if (steps_.size() + 1 != n) {
    throw InvalidArgument("pruning sequence needs n-1 = " + std::to_string(n - 1) + " steps");
  }
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const auto& s = steps_[i];
    if (s.pruned >= n || s.target >= n || s.pruned == s.target) {
      throw InvalidArgument("pruning step " + std::to_string(i) + " is malformed");
    }
    if (positions_[s.pruned] != 0) {
      throw InvalidArgument("node pruned twice at step " + std::to_string(i));
    }
    positions_[s.pruned] = i + 1;
    order_[i] = s.pruned;
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (positions_[v] == 0) {
      positions_[v] = n;
      survivor_ = v;
      order_[n - 1] = v;
    }
  }
  for (const auto& s : steps_) {
    if (positions_[s.target] <= positions_[s.pruned]) {
      throw InvalidArgument("pruning target removed before its pruned node");
    }
  }
}

namespace {

// Neighbourhoods restricted to the nodes still present.
class Remaining {
 public:
  explicit Remaining(const Graph& g) : g_(g), alive_(g.all_nodes()), cur_(g.size()) {
    for (NodeIndex v = 0; v < g.size(); ++v) cur_[v] = g.neighbors(v);
  }

  bool alive(NodeIndex v) const { return alive_.test(v); }
  std::size_t count() const { return alive_.count(); }
  const NodeSet& alive_set() const { return alive_; }
  const NodeSet& nbrs(NodeIndex v) const { return cur_[v]; }
  std::size_t degree(NodeIndex v) const { return cur_[v].count(); }
  bool adjacent(NodeIndex u, NodeIndex v) const { return g_.adjacent(u, v); }

  void remove(NodeIndex v) {
    alive_.reset(v);
    const auto& row = cur_[v];
    for (auto w = row.find_first(); w != NodeSet::npos; w = row.find_next(w)) cur_[w].reset(v);
  }

  // Twins ignoring the mutual adjacency bit; reports the role.
  std::optional<PruneRole> twin_role(NodeIndex v, NodeIndex u) {
    if (degree(u) != degree(v)) return std::nullopt;
    scratch_a_ = cur_[v];
    scratch_b_ = cur_[u];
    const bool adj = adjacent(u, v);
    scratch_a_.reset(u);
    scratch_b_.reset(v);
    if (scratch_a_ != scratch_b_) return std::nullopt;
    return adj ? PruneRole::true_twin : PruneRole::false_twin;
  }

  std::size_t difference(NodeIndex v, NodeIndex u) {
    scratch_a_ = cur_[v];
    scratch_b_ = cur_[u];
    scratch_a_.reset(u);
    scratch_b_.reset(v);
    scratch_a_ ^= scratch_b_;
    return scratch_a_.count();
  }

 private:
  const Graph& g_;
  NodeSet alive_;
  std::vector<NodeSet> cur_;
  NodeSet scratch_a_, scratch_b_;
};

// Same choice as scanning v then u in index order, using neighbourhood hashes.
std::optional<PruningStep> genuine_move(Remaining& rem, bool allow_pending) {
  const auto& alive = rem.alive_set();
  const std::size_t n = alive.size();
  std::vector<std::pair<std::size_t, NodeIndex>> open, closed;
  NodeSet scratch(n);
  for (auto v = alive.find_first(); v != NodeSet::npos; v = alive.find_next(v)) {
    open.emplace_back(std::hash<NodeSet>{}(rem.nbrs(v)), v);
    scratch = rem.nbrs(v);
    scratch.set(v);
    closed.emplace_back(std::hash<NodeSet>{}(scratch), v);
  }
  constexpr NodeIndex none = std::numeric_limits<NodeIndex>::max();
  std::vector<NodeIndex> partner(n, none);
  std::vector<PruneRole> partner_role(n, PruneRole::false_twin);
  const auto pair_up = [&](std::vector<std::pair<std::size_t, NodeIndex>>& keys, PruneRole want) {
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i + 1;
      while (j < keys.size() && keys[j].first == keys[i].first) ++j;
      for (std::size_t a = i; a < j; ++a) {
        for (std::size_t b = i; b < j; ++b) {
          const NodeIndex v = keys[a].second, u = keys[b].second;
          if (u == v || u >= partner[v]) continue;
          if (rem.twin_role(v, u) == want) {
            partner[v] = u;
            partner_role[v] = want;
          }
        }
      }
      i = j;
    }
  };
  pair_up(open, PruneRole::false_twin);
  pair_up(closed, PruneRole::true_twin);
  for (auto v = alive.find_first(); v != NodeSet::npos; v = alive.find_next(v)) {
    const bool pending = allow_pending && rem.degree(v) == 1;
    const NodeIndex target = pending ? rem.nbrs(v).find_first() : none;
    if (partner[v] == none && !pending) continue;
    if (partner[v] <= target) return PruningStep{v, partner_role[v], partner[v]};
    return PruningStep{v, PruneRole::pending, target};
  }
  return std::nullopt;
}

PruningStep forced_move(Remaining& rem, StuckRule rule) {
  const auto& alive = rem.alive_set();
  if (rule == StuckRule::force_pending) {
    for (auto v = alive.find_first(); v != NodeSet::npos; v = alive.find_next(v)) {
      if (rem.degree(v) > 0) return PruningStep{v, PruneRole::pending, rem.nbrs(v).find_first()};
    }
  }
  // nearest_twin, and the fallback when every remaining node is isolated
  std::size_t best = std::numeric_limits<std::size_t>::max();
  PruningStep step{0, PruneRole::false_twin, 0};
  for (auto v = alive.find_first(); v != NodeSet::npos; v = alive.find_next(v)) {
    for (auto u = alive.find_next(v); u != NodeSet::npos; u = alive.find_next(u)) {
      const auto d = rem.difference(v, u);
      if (d < best) {
        best = d;
        step = {v, rem.adjacent(u, v) ? PruneRole::true_twin : PruneRole::false_twin, u};
      }
    }
  }
  return step;
}

}  // namespace

std::optional<PruningSequence> eliminate(const Graph& g, bool allow_pending, StuckRule rule) {
  Remaining rem(g);
  std::vector<PruningStep> steps;
  steps.reserve(g.size() - 1);
  while (rem.count() > 1) {
    auto move = genuine_move(rem, allow_pending);
    if (!move) {
      if (rule == StuckRule::stop) return std::nullopt;
      move = forced_move(rem, rule);
    }
    steps.push_back(*move);
    rem.remove(move->pruned);
  }
  return PruningSequence(g.size(), std::move(steps));
}

NodeSet stuck_remainder(const Graph& g, bool allow_pending) {
  Remaining rem(g);
  while (rem.count() > 1) {
    const auto move = genuine_move(rem, allow_pending);
    if (!move) break;
    rem.remove(move->pruned);
  }
  return rem.alive_set();
}

std::optional<PruningSequence> compute_pruning_sequence(const Graph& g) {
  if (!is_connected(g)) throw InvalidArgument("compute_pruning_sequence: graph is disconnected");
  return eliminate(g, true, StuckRule::stop);
}

std::optional<PruningSequence> compute_twin_sequence(const Graph& g) {
  return eliminate(g, false, StuckRule::stop);
}

std::optional<std::size_t> first_invalid_step(const Graph& g, const PruningSequence& seq) {
  if (seq.node_count() != g.size()) return 0;
  Remaining rem(g);
  for (std::size_t i = 0; i < seq.steps().size(); ++i) {
    const auto& s = seq.steps()[i];
    if (!rem.alive(s.pruned) || !rem.alive(s.target)) return i;
    bool ok = false;
    switch (s.role) {
      case PruneRole::pending:
        ok = rem.degree(s.pruned) == 1 && rem.nbrs(s.pruned).test(s.target);
        break;
      case PruneRole::true_twin:
      case PruneRole::false_twin:
        ok = rem.twin_role(s.pruned, s.target) == s.role;
        break;
    }
    if (!ok) return i;
    rem.remove(s.pruned);
  }
  return std::nullopt;
}

}  // namespace diplab
