#include "diplab/dh_protocol.hpp"

#include <algorithm>

#include "diplab/errors.hpp"

namespace diplab {

namespace {

using K = FieldKind;

SlotValue opt(const std::optional<NodeId>& v) { return v ? one(*v) : SlotValue{}; }
SlotValue opt_el(const std::optional<Element>& v) { return v ? one(*v) : SlotValue{}; }
std::optional<NodeId> get_id(const SlotValue& s) {
  return s ? std::optional<NodeId>(static_cast<NodeId>((*s)[0])) : std::nullopt;
}
std::optional<Element> get_el(const SlotValue& s) {
  return s ? std::optional<Element>((*s)[0]) : std::nullopt;
}
Element req(const SlotValue& s) { return (*s)[0]; }

bool is_twin(DhRole r) { return r == DhRole::false_twin || r == DhRole::true_twin; }

DhRole role_of(PruneRole r) {
  switch (r) {
    case PruneRole::pending: return DhRole::pending;
    case PruneRole::false_twin: return DhRole::false_twin;
    case PruneRole::true_twin: return DhRole::true_twin;
  }
  return DhRole::final;
}

struct Node {
  NodeId id;
  DhCertR1 r1;
  DhCertR3 r3;
};

PermFields perm_of(const Node& x) {
  PermFields p = x.r1.perm;
  p.subtree_sum = x.r3.subtree_sum;
  return p;
}

const Node* find(const std::vector<Node>& nodes, NodeId id) {
  for (const auto& x : nodes) {
    if (x.id == id) return &x;
  }
  return nullptr;
}

// Replays u's merge history at its designated verifier.
NodeDecision replay(const Node& u, const Node& me, const std::vector<Node>& heard, const Field& f) {
  std::vector<const Node*> twins;
  auto consider = [&](const Node& x) {
    if (is_twin(x.r1.role) && x.r1.twin == u.id) twins.push_back(&x);
  };
  consider(me);
  for (const auto& x : heard) consider(x);
  if (twins.size() != u.r1.twins_count) return NodeDecision::reject("replay-conservation");
  std::sort(twins.begin(), twins.end(),
            [](const Node* x, const Node* y) { return x->r1.pos < y->r1.pos; });
  for (std::size_t i = 0; i < twins.size(); ++i) {
    const Node& w = *twins[i];
    if (w.r1.pos >= u.r1.pos || (i > 0 && twins[i - 1]->r1.pos == w.r1.pos)) {
      return NodeDecision::reject("replay-compare");
    }
    const NodeId next = i + 1 < twins.size() ? twins[i + 1]->id : u.id;
    if (w.r1.co_twin != next || w.r1.ant_of_twin != me.id) return NodeDecision::reject("replay-compare");
  }
  if (!twins.empty() && u.r1.first_twin_pos != twins.front()->r1.pos) {
    return NodeDecision::reject("replay-compare");
  }

  Element between = u.r1.pre_count;
  Element spread = u.r3.p0;
  for (const Node* w : twins) {
    between += w->r1.between_count.value_or(0);
    spread = f.add(spread, w->r3.s_interval.value_or(0));
  }
  if (between != u.r1.pending_count || spread != u.r3.p_total) {
    return NodeDecision::reject("replay-conservation");
  }

  VectorEntry state{u.r3.a0, f.sub(u.r3.b0, u.r3.p0)};
  for (const Node* w : twins) {
    const VectorEntry claimed{w->r3.a_pi, w->r3.b_pi};
    if (claimed.a == state.a) return NodeDecision::reject("replay-compare");
    const bool match = w->r1.role == DhRole::true_twin
                           ? f.add(claimed.a, claimed.b) == f.add(state.a, state.b)
                           : claimed.b == state.b;
    if (!match) return NodeDecision::reject("replay-compare");
    state = twin_merge(state, claimed, f).entry;
    state.b = f.sub(state.b, w->r3.s_interval.value_or(0));
  }
  if (state != VectorEntry{u.r3.a_pi, u.r3.b_pi}) return NodeDecision::reject("replay-compare");
  return NodeDecision::ok();
}

DhCertR1 r1_from(const Record& r);
DhCertR3 r3_from(const Record& r);

std::vector<Node> decode_heard(std::span<const BitString> bits, const Encoding& enc) {
  static const std::vector<Schema> schemas{dh_schema_r1(), dh_schema_r3()};
  std::vector<Node> out;
  out.reserve(bits.size());
  for (const auto& b : bits) {
    auto parsed = parse_broadcast(schemas, b, enc);
    out.push_back({parsed.id, r1_from(parsed.certificates[0]), r3_from(parsed.certificates[1])});
  }
  return out;
}

}  // namespace

const Schema& dh_schema_r1() {
  static const Schema s{
      {{K::position}, false},          // pos
      {{K::id}, true},                 // ant
      {{K::role}, false},              // role
      {{K::id}, true},                 // pending target
      {{K::id}, true},                 // twin
      {{K::id}, true},                 // ant of twin
      {{K::count}, false},             // twins count
      {{K::count}, false},             // pending count
      {{K::id, K::position}, true},    // m-leaf
      {{K::id}, true},                 // co-twin
      {{K::count}, true},              // between count
      {{K::position}, true},           // first twin position
      {{K::count}, false},             // pre-twin pending count
      {{K::flag}, false},              // verifier flag
      {{K::id}, false},                // permutation root
      {{K::id}, true},                 // tree parent
      {{K::count}, false},             // dist
      {{K::count}, false},             // subtree count
      {{K::count}, false},             // n claimed
  };
  return s;
}

const Schema& dh_schema_r3() {
  static const Schema s{
      {{K::element}, false}, {{K::element}, false}, {{K::element}, false}, {{K::element}, false},
      {{K::element}, false}, {{K::element}, false}, {{K::element}, true},  {{K::element}, false},
  };
  return s;
}

BitString encode(const DhCertR1& c, const Encoding& enc) {
  Record r{one(c.pos),
           opt(c.ant),
           one(static_cast<Element>(c.role)),
           opt(c.pending_target),
           opt(c.twin),
           opt(c.ant_of_twin),
           one(c.twins_count),
           one(c.pending_count),
           c.m_leaf ? some({c.m_leaf->first, c.m_leaf->second}) : SlotValue{},
           opt(c.co_twin),
           opt_el(c.between_count),
           opt_el(c.first_twin_pos),
           one(c.pre_count),
           one(c.verifier_flag ? 1 : 0),
           one(c.perm.root_id),
           opt(c.perm.parent),
           one(c.perm.dist),
           one(c.perm.subtree_count),
           one(c.perm.n_claimed)};
  return serialize_cert(dh_schema_r1(), r, enc);
}

BitString encode(const DhCertR3& c, const Encoding& enc) {
  Record r{one(c.a0),    one(c.b0), one(c.a_pi),         one(c.b_pi),
           one(c.p_total), one(c.p0), opt_el(c.s_interval), one(c.subtree_sum)};
  return serialize_cert(dh_schema_r3(), r, enc);
}

namespace {

DhCertR1 r1_from(const Record& r) {
  DhCertR1 c;
  c.pos = req(r[0]);
  c.ant = get_id(r[1]);
  c.role = static_cast<DhRole>(req(r[2]));
  c.pending_target = get_id(r[3]);
  c.twin = get_id(r[4]);
  c.ant_of_twin = get_id(r[5]);
  c.twins_count = req(r[6]);
  c.pending_count = req(r[7]);
  if (r[8]) c.m_leaf = std::make_pair(static_cast<NodeId>((*r[8])[0]), (*r[8])[1]);
  c.co_twin = get_id(r[9]);
  c.between_count = get_el(r[10]);
  c.first_twin_pos = get_el(r[11]);
  c.pre_count = req(r[12]);
  c.verifier_flag = req(r[13]) != 0;
  c.perm.root_id = static_cast<NodeId>(req(r[14]));
  c.perm.parent = get_id(r[15]);
  c.perm.dist = req(r[16]);
  c.perm.subtree_count = req(r[17]);
  c.perm.n_claimed = req(r[18]);
  return c;
}

DhCertR3 r3_from(const Record& r) {
  return {req(r[0]), req(r[1]), req(r[2]), req(r[3]), req(r[4]), req(r[5]), get_el(r[6]), req(r[7])};
}

}  // namespace

DhCertR1 decode_dh_r1(const BitString& bits, const Encoding& enc) {
  return r1_from(parse_cert(dh_schema_r1(), bits, enc));
}

DhCertR3 decode_dh_r3(const BitString& bits, const Encoding& enc) {
  return r3_from(parse_cert(dh_schema_r3(), bits, enc));
}

PruningSequence dh_prover_sequence(const Graph& g) {
  return *eliminate(g, true, StuckRule::force_pending);
}

PruningSequence dh_forged_sequence(const Graph& g) {
  return *eliminate(g, true, StuckRule::nearest_twin);
}

namespace {

struct SequenceFacts {
  std::vector<std::optional<NodeIndex>> ant;
  std::vector<std::vector<NodeIndex>> twins;     // sorted by position
  std::vector<std::vector<NodeIndex>> pendings;  // sorted by position
};

SequenceFacts facts_of(const Graph& g, const PruningSequence& seq) {
  const std::size_t n = g.size();
  SequenceFacts out{std::vector<std::optional<NodeIndex>>(n), std::vector<std::vector<NodeIndex>>(n),
                    std::vector<std::vector<NodeIndex>>(n)};
  for (NodeIndex v = 0; v < n; ++v) {
    for (NodeIndex w : g.neighbor_list(v)) {
      if (seq.position(w) > seq.position(v) &&
          (!out.ant[v] || seq.position(w) < seq.position(*out.ant[v]))) {
        out.ant[v] = w;
      }
    }
  }
  for (const auto& s : seq.steps()) {
    (s.role == PruneRole::pending ? out.pendings : out.twins)[s.target].push_back(s.pruned);
  }
  return out;
}

std::optional<NodeIndex> verifier_of(NodeIndex u, const PruningSequence& seq,
                                     const SequenceFacts& facts) {
  const std::size_t n = seq.node_count();
  if (seq.position(u) < n) return facts.ant[u];
  if (n >= 2) return seq.node_at(n - 1);
  return std::nullopt;
}

// Pending children of u strictly between two positions.
template <typename Fn>
void for_pendings_between(const SequenceFacts& facts, const PruningSequence& seq, NodeIndex u,
                          std::size_t low, std::size_t high, Fn fn) {
  for (NodeIndex p : facts.pendings[u]) {
    const auto pos = seq.position(p);
    if (pos > low && pos < high) fn(p);
  }
}

}  // namespace

std::vector<DhCertR1> prove_dh_round1(const NetworkConfig& cfg, const PruningSequence& seq) {
  const Graph& g = cfg.graph();
  const std::size_t n = g.size();
  const auto facts = facts_of(g, seq);
  std::vector<Element> positions(n);
  for (NodeIndex v = 0; v < n; ++v) positions[v] = seq.position(v);
  const Field dummy(kMersenne61);
  const auto perm = prove_permutation(cfg, positions, 1, dummy);

  std::vector<DhCertR1> out(n);
  for (NodeIndex v = 0; v < n; ++v) {
    auto& c = out[v];
    c.pos = positions[v];
    if (facts.ant[v]) c.ant = cfg.id(*facts.ant[v]);
    c.verifier_flag = n >= 2 && c.pos == n - 1;
    c.perm = perm[v];
    c.perm.subtree_sum = 0;
    c.twins_count = facts.twins[v].size();
    c.pending_count = facts.pendings[v].size();
    if (!facts.pendings[v].empty()) {
      const NodeIndex first = facts.pendings[v].front();
      c.m_leaf = std::make_pair(cfg.id(first), positions[first]);
    }
    std::size_t boundary = seq.position(v);
    if (!facts.twins[v].empty()) {
      boundary = seq.position(facts.twins[v].front());
      c.first_twin_pos = boundary;
    }
    for_pendings_between(facts, seq, v, 0, boundary, [&](NodeIndex) { ++c.pre_count; });
  }
  for (const auto& s : seq.steps()) {
    auto& c = out[s.pruned];
    c.role = role_of(s.role);
    if (s.role == PruneRole::pending) {
      c.pending_target = cfg.id(s.target);
      continue;
    }
    c.twin = cfg.id(s.target);
    if (auto ver = verifier_of(s.target, seq, facts)) c.ant_of_twin = cfg.id(*ver);
  }
  for (NodeIndex u = 0; u < n; ++u) {
    const auto& tw = facts.twins[u];
    for (std::size_t i = 0; i < tw.size(); ++i) {
      const NodeIndex next = i + 1 < tw.size() ? tw[i + 1] : u;
      auto& c = out[tw[i]];
      c.co_twin = cfg.id(next);
      Element count = 0;
      for_pendings_between(facts, seq, u, seq.position(tw[i]), seq.position(next),
                           [&](NodeIndex) { ++count; });
      c.between_count = count;
    }
  }
  return out;
}

std::vector<DhCertR3> prove_dh_round3(const NetworkConfig& cfg, const PruningSequence& seq,
                                      Element t, const Field& f) {
  const Graph& g = cfg.graph();
  const std::size_t n = g.size();
  const auto facts = facts_of(g, seq);
  std::vector<Element> positions(n);
  for (NodeIndex v = 0; v < n; ++v) positions[v] = seq.position(v);
  const auto perm = prove_permutation(cfg, positions, t, f);

  std::vector<DhCertR3> out(n);
  std::vector<VectorEntry> cur(n);
  for (NodeIndex v = 0; v < n; ++v) {
    out[v].a0 = f.pow(t, positions[v]);
    for (NodeIndex w : g.neighbor_list(v)) out[v].b0 = f.add(out[v].b0, f.pow(t, positions[w]));
    cur[v] = {out[v].a0, out[v].b0};
    out[v].subtree_sum = perm[v].subtree_sum;
  }
  // Same arithmetic as twin_merge / pending_delete, without the collision abort.
  for (const auto& s : seq.steps()) {
    const VectorEntry removed = cur[s.pruned];
    out[s.pruned].a_pi = removed.a;
    out[s.pruned].b_pi = removed.b;
    VectorEntry& u = cur[s.target];
    if (s.role == PruneRole::pending) {
      u = pending_delete(u, removed.a, f);
    } else {
      const bool delta = f.add(u.a, u.b) == f.add(removed.a, removed.b);
      u = {f.add(u.a, removed.a), delta ? f.sub(u.b, removed.a) : u.b};
    }
  }
  out[seq.survivor()].a_pi = cur[seq.survivor()].a;
  out[seq.survivor()].b_pi = cur[seq.survivor()].b;

  for (NodeIndex u = 0; u < n; ++u) {
    const auto& tw = facts.twins[u];
    const std::size_t boundary = tw.empty() ? seq.position(u) : seq.position(tw.front());
    for (NodeIndex p : facts.pendings[u]) out[u].p_total = f.add(out[u].p_total, out[p].a_pi);
    for_pendings_between(facts, seq, u, 0, boundary,
                         [&](NodeIndex p) { out[u].p0 = f.add(out[u].p0, out[p].a_pi); });
    for (std::size_t i = 0; i < tw.size(); ++i) {
      const NodeIndex next = i + 1 < tw.size() ? tw[i + 1] : u;
      Element sum = 0;
      for_pendings_between(facts, seq, u, seq.position(tw[i]), seq.position(next),
                           [&](NodeIndex p) { sum = f.add(sum, out[p].a_pi); });
      out[tw[i]].s_interval = sum;
    }
  }
  return out;
}

Certificates DhProtocol::certify_sequence(const ProverContext& ctx, const PruningSequence& seq) {
  const NetworkConfig& cfg = *ctx.cfg;
  Certificates out;
  if (ctx.merlin_round == 0) {
    const auto certs = prove_dh_round1(cfg, seq);
    for (NodeIndex v = 0; v < cfg.size(); ++v) out[cfg.id(v)] = encode(certs[v], *ctx.enc);
  } else {
    const auto certs = prove_dh_round3(cfg, seq, ctx.randomness.at(0), *ctx.field);
    for (NodeIndex v = 0; v < cfg.size(); ++v) out[cfg.id(v)] = encode(certs[v], *ctx.enc);
  }
  return out;
}

Certificates DhProtocol::honest(const ProverContext& ctx) const {
  return certify_sequence(ctx, dh_prover_sequence(ctx.cfg->graph()));
}

Certificates DhProtocol::forged(const ProverContext& ctx) const {
  return certify_sequence(ctx, dh_forged_sequence(ctx.cfg->graph()));
}

NodeDecision DhProtocol::decide(const LocalView& view, std::span<const BitString> heard_bits) const {
  const Encoding& enc = *view.enc;
  const Field& f = *view.field;
  const Element t = view.randomness.at(0);
  const Node me{view.id, decode_dh_r1(view.certificates.at(0), enc),
                decode_dh_r3(view.certificates.at(1), enc)};
  const auto heard = decode_heard(heard_bits, enc);
  const auto& c = me.r1;
  const auto& d = me.r3;

  std::vector<PermNeighbor> pn;
  pn.reserve(heard.size());
  for (const auto& h : heard) pn.push_back({h.id, h.r1.pos, perm_of(h)});
  if (auto perm = check_permutation(view.id, c.pos, perm_of(me), pn, t, f); !perm.accept) return perm;
  const Element n = c.perm.n_claimed;

  if (d.a0 != f.pow(t, c.pos)) return NodeDecision::reject("initial-vector");
  Element b0 = 0;
  for (const auto& h : heard) {
    if (h.r1.pos == 0) return NodeDecision::reject("range");
    b0 = f.add(b0, f.pow(t, h.r1.pos));
  }
  if (b0 != d.b0) return NodeDecision::reject("initial-vector");

  const bool twin = is_twin(c.role);
  if ((c.role == DhRole::final) != (c.pos == n) || c.ant.has_value() != (c.pos < n) ||
      c.verifier_flag != (c.pos + 1 == n) ||
      c.pending_target.has_value() != (c.role == DhRole::pending) ||
      c.twin.has_value() != twin || c.ant_of_twin.has_value() != twin ||
      c.co_twin.has_value() != twin || c.between_count.has_value() != twin ||
      d.s_interval.has_value() != twin ||
      c.first_twin_pos.has_value() != (c.twins_count > 0)) {
    return NodeDecision::reject("structure");
  }

  std::vector<const Node*> later;
  for (const auto& h : heard) {
    if (h.r1.pos > c.pos) later.push_back(&h);
  }
  if (c.ant) {
    const Node* best = nullptr;
    for (const Node* h : later) {
      if (!best || h->r1.pos < best->r1.pos) best = h;
    }
    if (!best || best->id != *c.ant) return NodeDecision::reject("structure");
  }
  if (c.role == DhRole::pending && (later.size() != 1 || later.front()->id != *c.pending_target)) {
    return NodeDecision::reject("pending-role");
  }
  if (twin) {
    const bool adjacent = find(heard, *c.twin) != nullptr;
    // the node at position n-1 may verify the final node it is a twin of
    const bool reachable = *c.ant_of_twin == view.id || find(heard, *c.ant_of_twin);
    if (*c.twin == view.id || adjacent != (c.role == DhRole::true_twin) || !reachable) {
      return NodeDecision::reject("twin-role");
    }
  }

  // pending children
  Element count = 0, pre = 0, total = 0, early = 0;
  std::optional<std::pair<NodeId, Element>> first;
  for (const auto& h : heard) {
    if (h.r1.role != DhRole::pending || h.r1.pending_target != view.id) continue;
    ++count;
    total = f.add(total, h.r3.a_pi);
    if (!first || h.r1.pos < first->second) first = std::make_pair(h.id, h.r1.pos);
    if (!c.first_twin_pos || h.r1.pos < *c.first_twin_pos) {
      ++pre;
      early = f.add(early, h.r3.a_pi);
    }
  }
  if (count != c.pending_count || total != d.p_total || first != c.m_leaf || pre != c.pre_count ||
      early != d.p0) {
    return NodeDecision::reject("pending-children");
  }
  if (c.twins_count == 0 && VectorEntry{d.a_pi, d.b_pi} != VectorEntry{d.a0, f.sub(d.b0, d.p_total)}) {
    return NodeDecision::reject("replay-compare");
  }

  // replays delegated to me
  std::vector<const Node*> verified;
  for (const auto& h : heard) {
    if (h.r1.ant == view.id) verified.push_back(&h);
  }
  if (c.verifier_flag) {
    const Node* fin = find(heard, *c.ant);
    if (!fin || fin->r1.role != DhRole::final) return NodeDecision::reject("structure");
    verified.push_back(fin);
  }
  for (const Node* u : verified) {
    if (auto r = replay(*u, me, heard, f); !r.accept) return r;
  }
  auto delegated_elsewhere = [&](const Node& w) {
    if (!is_twin(w.r1.role) || w.r1.ant_of_twin != view.id) return false;
    return std::none_of(verified.begin(), verified.end(),
                        [&](const Node* u) { return u->id == w.r1.twin; });
  };
  if (delegated_elsewhere(me)) return NodeDecision::reject("twin-role");
  for (const auto& h : heard) {
    if (delegated_elsewhere(h)) return NodeDecision::reject("twin-role");
  }
  return NodeDecision::ok();
}

}  // namespace diplab
