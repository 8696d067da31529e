#include "diplab/canonical_family.hpp"

#include <algorithm>
#include <numeric>

#include "diplab/errors.hpp"

namespace diplab {

namespace {

void check_exponents(const Graph& g, std::span<const Element> exponents) {
  if (exponents.size() != g.size()) throw InvalidArgument("one exponent per node required");
  for (Element e : exponents) {
    if (e == 0) throw InvalidArgument("exponents must be >= 1");
  }
}

// Polynomials with 0/1 coefficients over distinct monomials, as exponent sets.
class SymbolicFamily {
 public:
  SymbolicFamily(const Graph& g, std::span<const Element> exponents, Element t, const Field& f)
      : g_(g), f_(f), alive_(g.all_nodes()), phi_(g.size()), phi_val_(g.size()) {
    const Element top = *std::max_element(exponents.begin(), exponents.end());
    monomial_.resize(static_cast<std::size_t>(top) + 1);
    const PowerTable powers(t, static_cast<std::size_t>(top), f);
    for (std::size_t e = 0; e <= top; ++e) monomial_[e] = powers[e];
    for (NodeIndex v = 0; v < g.size(); ++v) {
      phi_[v] = NodeSet(monomial_.size());
      phi_[v].set(static_cast<std::size_t>(exponents[v]));
      phi_val_[v] = monomial_[static_cast<std::size_t>(exponents[v])];
    }
  }

  const NodeSet& alive() const { return alive_; }

  NodeSet q(NodeIndex v) const {
    NodeSet out(monomial_.size());
    const NodeSet around = g_.neighbors(v) & alive_;
    for (auto w = around.find_first(); w != NodeSet::npos; w = around.find_next(w)) out |= phi_[w];
    return out;
  }

  Element eval(const NodeSet& poly) const {
    Element sum = 0;
    for (auto e = poly.find_first(); e != NodeSet::npos; e = poly.find_next(e)) {
      sum = f_.add(sum, monomial_[e]);
    }
    return sum;
  }

  VectorEntry entry(NodeIndex v) const { return {phi_val_[v], eval(q(v))}; }

  void apply(const PruningStep& s) {
    if (s.role != PruneRole::pending) {
      phi_[s.target] |= phi_[s.pruned];
      phi_val_[s.target] = f_.add(phi_val_[s.target], phi_val_[s.pruned]);
    }
    alive_.reset(s.pruned);
  }

  // Some nonzero family member vanishes at t among the current survivors.
  bool has_root() const {
    std::vector<NodeIndex> live;
    for (auto v = alive_.find_first(); v != NodeSet::npos; v = alive_.find_next(v)) live.push_back(v);
    std::vector<NodeSet> qs, qbars;
    std::vector<Element> q_val, qbar_val;
    for (NodeIndex v : live) {
      if (phi_val_[v] == 0) return true;
      qs.push_back(q(v));
      qbars.push_back(qs.back() | phi_[v]);
      q_val.push_back(eval(qs.back()));
      qbar_val.push_back(f_.add(q_val.back(), phi_val_[v]));
    }
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        // distinct survivors have disjoint, nonempty phi sets
        if (phi_val_[live[i]] == phi_val_[live[j]]) return true;
        if (q_val[i] == q_val[j] && qs[i] != qs[j]) return true;
        if (qbar_val[i] == qbar_val[j] && qbars[i] != qbars[j]) return true;
      }
    }
    return false;
  }

 private:
  const Graph& g_;
  const Field& f_;
  NodeSet alive_;
  std::vector<NodeSet> phi_;
  std::vector<Element> phi_val_;
  std::vector<Element> monomial_;
};

std::vector<std::optional<VectorEntry>> snapshot(const SymbolicFamily& fam, std::size_t n) {
  std::vector<std::optional<VectorEntry>> out(n);
  const auto& alive = fam.alive();
  for (auto v = alive.find_first(); v != NodeSet::npos; v = alive.find_next(v)) out[v] = fam.entry(v);
  return out;
}

}  // namespace

std::vector<Element> positions_as_exponents(const PruningSequence& seq) {
  std::vector<Element> out;
  for (auto p : seq.positions()) out.push_back(p);
  return out;
}

bool canonical_family_root_count(const Graph& g, const PruningSequence& seq,
                                 std::span<const Element> exponents, Element t, const Field& f) {
  check_exponents(g, exponents);
  SymbolicFamily fam(g, exponents, t, f);
  for (const auto& step : seq.steps()) {
    if (fam.has_root()) return true;
    fam.apply(step);
  }
  return fam.has_root();
}

bool canonical_family_root_count(const Graph& g, const PruningSequence& seq, Element t,
                                 const Field& f) {
  const auto e = positions_as_exponents(seq);
  return canonical_family_root_count(g, seq, e, t, f);
}

VectorSnapshots symbolic_vectors(const Graph& g, const PruningSequence& seq,
                                 std::span<const Element> exponents, Element t, const Field& f) {
  check_exponents(g, exponents);
  SymbolicFamily fam(g, exponents, t, f);
  VectorSnapshots out;
  for (const auto& step : seq.steps()) {
    out.push_back(snapshot(fam, g.size()));
    fam.apply(step);
  }
  out.push_back(snapshot(fam, g.size()));
  return out;
}

VectorSnapshots fold_vectors(const Graph& g, const PruningSequence& seq,
                             std::span<const Element> exponents, Element t, const Field& f) {
  check_exponents(g, exponents);
  std::vector<std::optional<VectorEntry>> cur(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) {
    Element b = 0;
    for (NodeIndex w : g.neighbor_list(v)) b = f.add(b, phi_eval(exponents[w], t, f));
    cur[v] = VectorEntry{phi_eval(exponents[v], t, f), b};
  }
  VectorSnapshots out;
  for (const auto& s : seq.steps()) {
    out.push_back(cur);
    const VectorEntry removed = *cur[s.pruned];
    VectorEntry& survivor = *cur[s.target];
    survivor = s.role == PruneRole::pending ? pending_delete(survivor, removed.a, f)
                                            : twin_merge(survivor, removed, f).entry;
    cur[s.pruned].reset();
  }
  out.push_back(cur);
  return out;
}

std::optional<PruningSequence> canonical_order(const Graph& g, std::span<const Element> keys) {
  if (keys.size() != g.size()) throw InvalidArgument("one key per node required");
  std::vector<NodeIndex> by_key(g.size());
  std::iota(by_key.begin(), by_key.end(), NodeIndex{0});
  std::sort(by_key.begin(), by_key.end(), [&](NodeIndex a, NodeIndex b) { return keys[a] < keys[b]; });
  for (std::size_t i = 1; i < by_key.size(); ++i) {
    if (keys[by_key[i]] == keys[by_key[i - 1]]) throw InvalidArgument("keys must be distinct");
  }
  NodeSet alive = g.all_nodes();
  std::vector<PruningStep> steps;
  auto restricted = [&](NodeIndex v, NodeIndex other) {
    NodeSet s = g.neighbors(v) & alive;
    s.reset(other);
    return s;
  };
  while (steps.size() + 1 < g.size()) {
    bool found = false;
    for (std::size_t i = 0; i < by_key.size() && !found; ++i) {
      const NodeIndex u = by_key[i];
      if (!alive.test(u)) continue;
      for (std::size_t j = i + 1; j < by_key.size(); ++j) {
        const NodeIndex v = by_key[j];
        if (!alive.test(v) || restricted(u, v) != restricted(v, u)) continue;
        steps.push_back({u, g.adjacent(u, v) ? PruneRole::true_twin : PruneRole::false_twin, v});
        alive.reset(u);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return PruningSequence(g.size(), std::move(steps));
}

}  // namespace diplab
