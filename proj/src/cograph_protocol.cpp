#include "diplab/cograph_protocol.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "diplab/errors.hpp"
#include "diplab/pruning.hpp"

namespace diplab {

namespace {

using K = FieldKind;

SlotValue opt_id(const std::optional<NodeId>& id) {
  return id ? one(*id) : SlotValue{};
}

std::optional<NodeId> id_of(const SlotValue& s) {
  if (!s) return std::nullopt;
  return static_cast<NodeId>((*s)[0]);
}

Record to_record(const CographCert& c) {
  Record r{one(static_cast<Element>(c.role)), opt_id(c.parent), opt_id(c.child), one(c.root),
           one(c.fresh), one(c.a), one(c.b), SlotValue{}};
  if (c.child_copy) {
    r[7] = some({c.child_copy->id, c.child_copy->fresh, c.child_copy->a, c.child_copy->b});
  }
  return r;
}

CographCert from_record(const Record& r) {
  CographCert c;
  const Element role = (*r[0])[0];
  if (role > 2) throw EncodingError("unknown tree role");
  c.role = static_cast<TreeRole>(role);
  c.parent = id_of(r[1]);
  c.child = id_of(r[2]);
  c.root = static_cast<NodeId>((*r[3])[0]);
  c.fresh = (*r[4])[0];
  c.a = (*r[5])[0];
  c.b = (*r[6])[0];
  if (r[7]) {
    const auto& v = *r[7];
    c.child_copy = CopiedEntry{static_cast<NodeId>(v[0]), v[1], v[2], v[3]};
  }
  return c;
}

struct Heard {
  NodeId id;
  CographCert cert;
};

std::vector<Heard> decode_heard(std::span<const BitString> heard, const Encoding& enc) {
  static const std::vector<Schema> schemas{cograph_schema()};
  std::vector<Heard> out;
  out.reserve(heard.size());
  for (const auto& bits : heard) {
    auto parsed = parse_broadcast(schemas, bits, enc);
    out.push_back({parsed.id, from_record(parsed.certificates[0])});
  }
  return out;
}

const Heard* find(const std::vector<Heard>& heard, NodeId id) {
  for (const auto& h : heard) {
    if (h.id == id) return &h;
  }
  return nullptr;
}

// Entries the root collects: itself, its depth-one neighbours, their copies.
std::vector<CopiedEntry> gather_entries(NodeId root_id, const CographCert& mine,
                                        const std::vector<Heard>& heard) {
  std::vector<CopiedEntry> entries{{root_id, mine.fresh, mine.a, mine.b}};
  for (const auto& h : heard) {
    if (h.cert.role != TreeRole::mid || h.cert.parent != root_id) continue;
    entries.push_back({h.id, h.cert.fresh, h.cert.a, h.cert.b});
    if (h.cert.child_copy) entries.push_back(*h.cert.child_copy);
  }
  return entries;
}

NodeDecision check_tree(const LocalView& view, const CographCert& c,
                        const std::vector<Heard>& heard) {
  const bool is_root = view.id == c.root;
  if (is_root != (c.role == TreeRole::root)) return NodeDecision::reject("tree");
  if (c.child.has_value() != c.child_copy.has_value()) return NodeDecision::reject("tree");
  switch (c.role) {
    case TreeRole::root:
      if (c.parent || c.child) return NodeDecision::reject("tree");
      break;
    case TreeRole::mid: {
      if (c.parent != c.root) return NodeDecision::reject("tree");
      const Heard* p = find(heard, *c.parent);
      if (!p || p->cert.role != TreeRole::root) return NodeDecision::reject("tree");
      if (c.child) {
        const Heard* ch = find(heard, *c.child);
        if (!ch || ch->cert.role != TreeRole::leaf || ch->cert.parent != view.id) {
          return NodeDecision::reject("tree");
        }
        const CopiedEntry actual{ch->id, ch->cert.fresh, ch->cert.a, ch->cert.b};
        if (*c.child_copy != actual) return NodeDecision::reject("copy");
      }
      break;
    }
    case TreeRole::leaf: {
      if (!c.parent || c.child) return NodeDecision::reject("tree");
      const Heard* p = find(heard, *c.parent);
      if (!p || p->cert.role != TreeRole::mid || p->cert.child != view.id) {
        return NodeDecision::reject("tree");
      }
      break;
    }
  }
  return NodeDecision::ok();
}

}  // namespace

const Schema& cograph_schema() {
  static const Schema schema{
      {{K::role}, false},
      {{K::id}, true},
      {{K::id}, true},
      {{K::id}, false},
      {{K::position}, false},
      {{K::element}, false},
      {{K::element}, false},
      {{K::id, K::position, K::element, K::element}, true},
  };
  return schema;
}

BitString encode(const CographCert& cert, const Encoding& enc) {
  return serialize_cert(cograph_schema(), to_record(cert), enc);
}

CographCert decode_cograph_cert(const BitString& bits, const Encoding& enc) {
  return from_record(parse_cert(cograph_schema(), bits, enc));
}

RefereeOutcome root_referee(std::span<const CopiedEntry> entries, const Field& f) {
  RefereeOutcome out;
  const std::size_t m = entries.size();
  std::set<NodeId> ids;
  std::vector<bool> seen(m + 1, false);
  for (const auto& e : entries) {
    if (!ids.insert(e.id).second) {
      out.reason = "duplicate id";
      return out;
    }
    if (e.fresh < 1 || e.fresh > m || seen[static_cast<std::size_t>(e.fresh)]) {
      out.reason = "fresh ids are not a permutation";
      return out;
    }
    seen[static_cast<std::size_t>(e.fresh)] = true;
  }

  std::vector<CopiedEntry> live(entries.begin(), entries.end());
  std::sort(live.begin(), live.end(),
            [](const CopiedEntry& x, const CopiedEntry& y) { return x.fresh < y.fresh; });
  while (live.size() > 1) {
    bool found = false;
    for (std::size_t i = 0; i < live.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const auto& u = live[i];
        const auto& v = live[j];
        if (u.a == v.a) continue;
        if (u.b != v.b && f.add(u.a, u.b) != f.add(v.a, v.b)) continue;
        const auto merged = twin_merge({v.a, v.b}, {u.a, u.b}, f);
        out.log.push_back({u.fresh, v.fresh, merged.delta});
        live[j].a = merged.entry.a;
        live[j].b = merged.entry.b;
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        found = true;
        break;
      }
    }
    if (!found) {
      out.reason = "no twin pair left";
      return out;
    }
  }
  out.accept = true;
  return out;
}

Graph reconstruct(const RefereeLog& log, std::size_t n) {
  if (n == 0) throw InvalidArgument("reconstruct: n must be >= 1");
  if (log.size() + 1 != n) throw MalformedLog("log must hold n-1 records");
  std::vector<bool> removed(n, false);
  for (const auto& r : log) {
    if (r.removed < 1 || r.removed > n || r.survivor < 1 || r.survivor > n ||
        r.removed == r.survivor) {
      throw MalformedLog("record references a node outside [1, n]");
    }
    const auto k = static_cast<std::size_t>(r.removed - 1);
    if (removed[k]) throw MalformedLog("node removed twice");
    removed[k] = true;
  }
  Graph g(n);
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    const auto u = static_cast<NodeIndex>(it->removed - 1);
    const auto v = static_cast<NodeIndex>(it->survivor - 1);
    if (removed[v]) throw MalformedLog("survivor absent when its twin returns");
    for (NodeIndex w : g.neighbor_list(v)) g.add_edge(u, w);
    if (it->delta) g.add_edge(u, v);
    removed[u] = false;
  }
  return g;
}

std::vector<Element> fresh_by_rank(const NetworkConfig& cfg) {
  std::vector<Element> fresh(cfg.size());
  const auto order = cfg.indices_by_id();
  for (std::size_t r = 0; r < order.size(); ++r) fresh[order[r]] = r + 1;
  return fresh;
}

TwoLevelTree best_effort_tree(const NetworkConfig& cfg) {
  const Graph& g = cfg.graph();
  const std::size_t n = g.size();
  TwoLevelTree tree{0, std::vector<std::optional<NodeIndex>>(n),
                    std::vector<std::optional<NodeIndex>>(n)};
  const auto order = cfg.indices_by_id();
  NodeIndex root = order.front();
  for (NodeIndex v : order) {
    if (g.degree(v) > g.degree(root)) root = v;
  }
  tree.root = root;
  std::vector<NodeIndex> mids;
  for (NodeIndex v : order) {
    if (v != root && g.adjacent(v, root)) {
      tree.parent[v] = root;
      mids.push_back(v);
    }
  }
  const NodeIndex fallback = mids.empty() ? root : mids.front();
  for (NodeIndex v : order) {
    if (v == root || tree.parent[v]) continue;
    std::optional<NodeIndex> pick;
    for (NodeIndex m : mids) {
      if (!tree.child[m] && g.adjacent(v, m)) {
        pick = m;
        break;
      }
    }
    if (pick) {
      tree.child[*pick] = v;
      tree.parent[v] = *pick;
    } else {
      tree.parent[v] = fallback;
    }
  }
  return tree;
}

namespace {

std::vector<CographCert> certs_for(const NetworkConfig& cfg, std::span<const Element> fresh,
                                   const TwoLevelTree& tree, Element t, const Field& f) {
  const Graph& g = cfg.graph();
  const std::size_t n = cfg.size();
  std::vector<CographCert> certs(n);
  for (NodeIndex v = 0; v < n; ++v) {
    auto& c = certs[v];
    c.root = cfg.id(tree.root);
    c.fresh = fresh[v];
    c.a = phi_eval(fresh[v], t, f);
    for (NodeIndex w : g.neighbor_list(v)) c.b = f.add(c.b, phi_eval(fresh[w], t, f));
    if (v == tree.root) {
      c.role = TreeRole::root;
    } else if (tree.parent[v] && *tree.parent[v] == tree.root) {
      c.role = TreeRole::mid;
      c.parent = cfg.id(tree.root);
    } else {
      c.role = TreeRole::leaf;
      if (tree.parent[v]) c.parent = cfg.id(*tree.parent[v]);
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (certs[v].role != TreeRole::mid || !tree.child[v]) continue;
    const NodeIndex ch = *tree.child[v];
    certs[v].child = cfg.id(ch);
    certs[v].child_copy = CopiedEntry{cfg.id(ch), certs[ch].fresh, certs[ch].a, certs[ch].b};
  }
  return certs;
}

Element shared_t(const ProverContext& ctx) {
  if (ctx.randomness.empty()) throw InvalidArgument("cograph prover needs the shared randomness");
  return ctx.randomness.front();
}

}  // namespace

std::vector<CographCert> prove_cograph(const NetworkConfig& cfg, Element t, const Field& f) {
  const auto fresh = fresh_by_rank(cfg);
  auto tree = bcc_spanning_tree(cfg);
  if (!tree) {
    // star claim around the smallest id
    const std::size_t n = cfg.size();
    tree = TwoLevelTree{cfg.indices_by_id().front(), std::vector<std::optional<NodeIndex>>(n),
                        std::vector<std::optional<NodeIndex>>(n)};
    for (NodeIndex v = 0; v < n; ++v) {
      if (v != tree->root) tree->parent[v] = tree->root;
    }
  }
  return certs_for(cfg, fresh, *tree, t, f);
}

Certificates to_certificates(const NetworkConfig& cfg, std::span<const CographCert> certs,
                             const Encoding& enc) {
  Certificates out;
  for (NodeIndex v = 0; v < cfg.size(); ++v) out[cfg.id(v)] = encode(certs[v], enc);
  return out;
}

Certificates CographProtocol::honest(const ProverContext& ctx) const {
  const auto certs = prove_cograph(*ctx.cfg, shared_t(ctx), *ctx.field);
  return to_certificates(*ctx.cfg, certs, *ctx.enc);
}

Certificates CographProtocol::forged(const ProverContext& ctx) const {
  const NetworkConfig& cfg = *ctx.cfg;
  const auto seq = eliminate(cfg.graph(), false, StuckRule::nearest_twin);
  std::vector<Element> fresh(cfg.size());
  for (NodeIndex v = 0; v < cfg.size(); ++v) fresh[v] = seq->position(v);
  auto tree = bcc_spanning_tree(cfg);
  if (!tree) tree = best_effort_tree(cfg);
  const auto certs = certs_for(cfg, fresh, *tree, shared_t(ctx), *ctx.field);
  return to_certificates(cfg, certs, *ctx.enc);
}

NodeDecision CographProtocol::decide(const LocalView& view,
                                     std::span<const BitString> heard_bits) const {
  const Encoding& enc = *view.enc;
  const Field& f = *view.field;
  const CographCert mine = decode_cograph_cert(view.certificates.at(0), enc);
  const auto heard = decode_heard(heard_bits, enc);
  const Element t = view.randomness.at(0);

  if (mine.fresh == 0) return NodeDecision::reject("range");
  if (mine.a != phi_eval(mine.fresh, t, f)) return NodeDecision::reject("fingerprint");
  Element b = 0;
  for (const auto& h : heard) {
    if (h.cert.fresh == 0) return NodeDecision::reject("range");
    b = f.add(b, phi_eval(h.cert.fresh, t, f));
    if (h.cert.root != mine.root) return NodeDecision::reject("tree");
  }
  if (b != mine.b) return NodeDecision::reject("fingerprint");

  if (auto tree = check_tree(view, mine, heard); !tree.accept) return tree;
  if (mine.role != TreeRole::root) return NodeDecision::ok();

  const auto entries = gather_entries(view.id, mine, heard);
  const auto outcome = root_referee(entries, f);
  if (!outcome.accept) return NodeDecision::reject("referee");
  if (predicate_ && !predicate_(reconstruct(outcome.log, entries.size()))) {
    return NodeDecision::reject("predicate");
  }
  return NodeDecision::ok();
}

std::optional<RefereeLog> CographProtocol::referee_log(const NetworkConfig& cfg,
                                                       const RunResult& run) {
  Encoding enc = Encoding::for_network(cfg, run.field);
  const auto& bcasts = run.transcript.broadcasts;
  for (NodeIndex v = 0; v < cfg.size(); ++v) {
    try {
      const CographCert mine = decode_cograph_cert(run.transcript.rounds.at(1).certificates.at(cfg.id(v)), enc);
      if (mine.role != TreeRole::root || mine.root != cfg.id(v)) continue;
      std::vector<BitString> heard;
      for (NodeIndex w : cfg.graph().neighbor_list(v)) heard.push_back(bcasts.at(w));
      const auto outcome = root_referee(gather_entries(cfg.id(v), mine, decode_heard(heard, enc)), run.field);
      if (outcome.accept) return outcome.log;
      return std::nullopt;
    } catch (const std::exception&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace diplab
