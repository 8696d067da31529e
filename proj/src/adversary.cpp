#include "diplab/adversary.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "diplab/errors.hpp"
#include "diplab/pruning.hpp"
#include "diplab/random.hpp"

namespace diplab {

namespace {

bool reducible(const Graph& g, GraphClass cls) {
  return stuck_remainder(g, cls == GraphClass::distance_hereditary).count() == 1;
}

class WrongGraphProver : public Prover {
 public:
  std::string name() const override { return "wrong-graph"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override {
    const auto cls = protocol.language();
    if (!cls) return protocol.honest(ctx);
    const NetworkConfig& cfg = *ctx.cfg;
    Graph edited = edit_to_member(cfg.graph(), *cls, derive_seed(ctx.run_seed, 0x6EAu));
    const std::vector<NodeId> ids(cfg.ids().begin(), cfg.ids().end());
    const NetworkConfig fake(std::move(edited), ids, cfg.id_exponent());
    ProverContext inner = ctx;
    inner.cfg = &fake;
    return protocol.honest(inner);
  }
};

class BitFlipProver : public Prover {
 public:
  explicit BitFlipProver(std::size_t flips) : flips_(flips) {}
  std::string name() const override { return "bit-flip"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override {
    Certificates certs = protocol.honest(ctx);
    Rng pick_round(derive_seed(ctx.run_seed, 0xB17u));
    if (ctx.merlin_rounds == 0 || pick_round.below(ctx.merlin_rounds) != ctx.merlin_round) {
      return certs;
    }
    std::vector<std::pair<BitString*, std::size_t>> slots;
    for (auto& [id, bits] : certs) {
      for (std::size_t i = 0; i < bits.size(); ++i) slots.emplace_back(&bits, i);
    }
    Rng rng(derive_seed(ctx.run_seed, 0xB17u, 1));
    rng.shuffle(slots);
    const std::size_t k = std::min(flips_, slots.size());
    for (std::size_t i = 0; i < k; ++i) slots[i].first->flip(slots[i].second);
    return certs;
  }

 private:
  std::size_t flips_;
};

class CertSwapProver : public Prover {
 public:
  std::string name() const override { return "cert-swap"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override {
    Certificates certs = protocol.honest(ctx);
    const NetworkConfig& cfg = *ctx.cfg;
    const std::size_t n = cfg.size();
    if (n < 2) return certs;
    Rng rng(derive_seed(ctx.run_seed, 0x5A9u));
    const NodeIndex other = 1 + rng.below(n - 1);
    std::swap(certs[cfg.id(0)], certs[cfg.id(other)]);
    return certs;
  }
};

class OrderForgeProver : public Prover {
 public:
  std::string name() const override { return "order-forge"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override {
    return protocol.forged(ctx);
  }
};

constexpr std::pair<AdversaryKind, std::string_view> kNames[] = {
    {AdversaryKind::honest, "honest"},
    {AdversaryKind::wrong_graph, "wrong-graph"},
    {AdversaryKind::bit_flip, "bit-flip"},
    {AdversaryKind::cert_swap, "cert-swap"},
    {AdversaryKind::order_forge, "order-forge"},
};

}  // namespace

std::string_view to_string(AdversaryKind kind) {
  for (auto [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

AdversaryKind parse_adversary(std::string_view name) {
  for (auto [k, n] : kNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown prover kind '" + std::string(name) + "'");
}

const std::vector<AdversaryKind>& all_adversaries() {
  static const std::vector<AdversaryKind> all{AdversaryKind::honest, AdversaryKind::wrong_graph,
                                              AdversaryKind::bit_flip, AdversaryKind::cert_swap,
                                              AdversaryKind::order_forge};
  return all;
}

std::unique_ptr<Prover> make_adversary(AdversaryKind kind, AdversaryParams params) {
  switch (kind) {
    case AdversaryKind::honest: return std::make_unique<HonestProver>();
    case AdversaryKind::wrong_graph: return std::make_unique<WrongGraphProver>();
    case AdversaryKind::bit_flip: return std::make_unique<BitFlipProver>(params.flips);
    case AdversaryKind::cert_swap: return std::make_unique<CertSwapProver>();
    case AdversaryKind::order_forge: return std::make_unique<OrderForgeProver>();
  }
  throw InvalidArgument("unknown prover kind");
}

std::unique_ptr<Prover> make_adversary(std::string_view kind, AdversaryParams params) {
  return make_adversary(parse_adversary(kind), params);
}

Graph edit_to_member(const Graph& g, GraphClass cls, std::uint64_t seed) {
  Graph h = g;
  Rng rng(seed);
  const std::size_t n = h.size();
  if (n >= 3 && reducible(h, cls)) {
    // toggle one pair without disconnecting
    const auto edges = h.edges();
    std::vector<Edge> non_edges;
    for (NodeIndex u = 0; u < n; ++u) {
      for (NodeIndex v = u + 1; v < n; ++v) {
        if (!h.adjacent(u, v)) non_edges.emplace_back(u, v);
      }
    }
    const std::size_t pick = rng.below(edges.size() + non_edges.size());
    if (pick < non_edges.size()) {
      h.add_edge(non_edges[pick].first, non_edges[pick].second);
    } else {
      const auto [u, v] = edges[pick - non_edges.size()];
      h.remove_edge(u, v);
      if (!is_connected(h)) h.add_edge(u, v);
    }
  }
  if (n <= 1) return h;
  // Rebuild in reverse elimination order. A node that is not already a twin
  // (or pendant, for DH) of an earlier node copies the back-edges of the nearest one.
  const bool dh = cls == GraphClass::distance_hereditary;
  const auto seq = eliminate(h, dh, StuckRule::nearest_twin);
  NodeSet built(n);
  built.set(seq->node_at(n));
  for (std::size_t pos = n - 1; pos >= 1; --pos) {
    const NodeIndex x = seq->node_at(pos);
    const NodeSet back = h.neighbors(x) & built;
    NodeSet best_back = back;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    const auto consider = [&](const NodeSet& want) {
      const std::size_t cost = (want ^ back).count();
      if (cost < best) {
        best = cost;
        best_back = want;
      }
    };
    for (auto u = built.find_first(); u != NodeSet::npos && best > 0; u = built.find_next(u)) {
      NodeSet nu = h.neighbors(u) & built;
      if (nu.any()) consider(nu);
      nu.set(u);
      consider(nu);
    }
    if (dh && best > 0) {
      NodeSet one(n);
      one.set(back.any() ? back.find_first() : built.find_first());
      consider(one);
    }
    for (auto w = built.find_first(); w != NodeSet::npos; w = built.find_next(w)) {
      if (best_back.test(w) && !h.adjacent(x, w)) h.add_edge(x, w);
      if (!best_back.test(w) && h.adjacent(x, w)) h.remove_edge(x, w);
    }
    built.set(x);
  }
  return h;
}

}  // namespace diplab
