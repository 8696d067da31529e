#include "diplab/permutation.hpp"

#include <queue>

#include "diplab/errors.hpp"
#include "diplab/random.hpp"

namespace diplab {

namespace {

using K = FieldKind;

const Schema& round_one() {
  static const Schema s{
      {{K::position}, false}, {{K::id}, false},    {{K::id}, true},
      {{K::count}, false},    {{K::count}, false}, {{K::count}, false},
  };
  return s;
}

const Schema& round_three() {
  static const Schema s{{{K::element}, false}};
  return s;
}

struct Decoded {
  Element position;
  PermFields perm;
};

Decoded from_records(const Record& r1, const Record& r3) {
  Decoded d;
  d.position = (*r1[0])[0];
  d.perm.root_id = static_cast<NodeId>((*r1[1])[0]);
  if (r1[2]) d.perm.parent = static_cast<NodeId>((*r1[2])[0]);
  d.perm.dist = (*r1[3])[0];
  d.perm.subtree_count = (*r1[4])[0];
  d.perm.n_claimed = (*r1[5])[0];
  d.perm.subtree_sum = (*r3[0])[0];
  return d;
}

}  // namespace

NodeDecision check_permutation(NodeId id, Element position, const PermFields& mine,
                               std::span<const PermNeighbor> heard, Element t, const Field& f) {
  const Element n = mine.n_claimed;
  if (n == 0 || position < 1 || position > n) return NodeDecision::reject("range");
  for (const auto& h : heard) {
    if (h.perm.root_id != mine.root_id || h.perm.n_claimed != n) {
      return NodeDecision::reject("perm-tree");
    }
  }
  const bool is_root = id == mine.root_id;
  if (is_root == mine.parent.has_value()) return NodeDecision::reject("perm-root-identity");
  if (is_root) {
    if (mine.dist != 0) return NodeDecision::reject("perm-tree");
  } else {
    const PermNeighbor* parent = nullptr;
    for (const auto& h : heard) {
      if (h.id == *mine.parent) parent = &h;
    }
    if (!parent || mine.dist == 0 || parent->perm.dist + 1 != mine.dist) {
      return NodeDecision::reject("perm-tree");
    }
  }
  Element count = 1;
  Element sum = phi_eval(position, t, f);
  for (const auto& h : heard) {
    if (h.perm.parent != id) continue;
    count += h.perm.subtree_count;
    sum = f.add(sum, h.perm.subtree_sum);
  }
  if (count != mine.subtree_count || sum != mine.subtree_sum) {
    return NodeDecision::reject("perm-tree");
  }
  if (is_root) {
    if (mine.subtree_count != n) return NodeDecision::reject("perm-root-identity");
    Element expected = 0, power = 1;
    for (Element i = 1; i <= n; ++i) {
      power = f.mul(power, t);
      expected = f.add(expected, power);
    }
    if (expected != sum) return NodeDecision::reject("perm-root-identity");
  }
  return NodeDecision::ok();
}

std::vector<PermFields> prove_permutation(const NetworkConfig& cfg,
                                          std::span<const Element> positions, Element t,
                                          const Field& f) {
  const Graph& g = cfg.graph();
  const std::size_t n = g.size();
  const NodeIndex root = cfg.indices_by_id().front();
  std::vector<PermFields> out(n);
  std::vector<bool> seen(n, false);
  std::vector<NodeIndex> order{root};
  seen[root] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const NodeIndex v = order[head];
    for (NodeIndex w : g.neighbor_list(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      out[w].parent = cfg.id(v);
      out[w].dist = out[v].dist + 1;
      order.push_back(w);
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    out[v].root_id = cfg.id(root);
    out[v].n_claimed = n;
    out[v].subtree_count = 1;
    out[v].subtree_sum = f.pow(t, positions[v]);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (!out[*it].parent) continue;
    auto& p = out[*cfg.index_of(*out[*it].parent)];
    p.subtree_count += out[*it].subtree_count;
    p.subtree_sum = f.add(p.subtree_sum, out[*it].subtree_sum);
  }
  return out;
}

const std::vector<Schema>& PermutationProtocol::schemas() const {
  static const std::vector<Schema> all{round_one(), round_three()};
  return all;
}

NodeDecision PermutationProtocol::decide(const LocalView& view,
                                         std::span<const BitString> heard_bits) const {
  const auto& all = schemas();
  const auto own = parse_certificates(all, view);
  const Decoded mine = from_records(own[0], own[1]);
  std::vector<PermNeighbor> heard;
  for (const auto& bits : heard_bits) {
    const auto parsed = parse_broadcast(all, bits, *view.enc);
    const Decoded d = from_records(parsed.certificates[0], parsed.certificates[1]);
    heard.push_back({parsed.id, d.position, d.perm});
  }
  return check_permutation(view.id, mine.position, mine.perm, heard, view.randomness.at(0),
                           *view.field);
}

Certificates PermutationProtocol::certify_positions(const ProverContext& ctx,
                                                    std::span<const Element> positions) const {
  const NetworkConfig& cfg = *ctx.cfg;
  const Element t = ctx.randomness.empty() ? 0 : ctx.randomness.front();
  const auto perm = prove_permutation(cfg, positions, t, *ctx.field);
  Certificates out;
  for (NodeIndex v = 0; v < cfg.size(); ++v) {
    const auto& p = perm[v];
    Record r;
    if (ctx.merlin_round == 0) {
      r = {one(positions[v]), one(p.root_id), p.parent ? one(*p.parent) : SlotValue{},
           one(p.dist), one(p.subtree_count), one(p.n_claimed)};
      out[cfg.id(v)] = serialize_cert(round_one(), r, *ctx.enc);
    } else {
      out[cfg.id(v)] = serialize_cert(round_three(), {one(p.subtree_sum)}, *ctx.enc);
    }
  }
  return out;
}

Certificates PermutationProtocol::honest(const ProverContext& ctx) const {
  std::vector<Element> positions(ctx.cfg->size());
  const auto order = ctx.cfg->indices_by_id();
  for (std::size_t r = 0; r < order.size(); ++r) positions[order[r]] = r + 1;
  return certify_positions(ctx, positions);
}

Certificates DuplicatePositionProver::certify(const Protocol& protocol,
                                              const ProverContext& ctx) const {
  const auto* perm = dynamic_cast<const PermutationProtocol*>(&protocol);
  if (!perm) throw InvalidArgument("duplicate-position prover needs the permutation protocol");
  const std::size_t n = ctx.cfg->size();
  std::vector<Element> positions(n);
  const auto order = ctx.cfg->indices_by_id();
  for (std::size_t r = 0; r < n; ++r) positions[order[r]] = r + 1;
  if (n >= 2) {
    Rng rng(derive_seed(ctx.run_seed, 0xD0Bu));
    const NodeIndex x = rng.below(n);
    NodeIndex y = rng.below(n - 1);
    if (y >= x) ++y;
    positions[x] = positions[y];
  }
  return perm->certify_positions(ctx, positions);
}

}  // namespace diplab
