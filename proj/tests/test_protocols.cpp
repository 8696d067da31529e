#include <algorithm>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "diplab/adversary.hpp"
#include "diplab/cograph_protocol.hpp"
#include "diplab/dh_protocol.hpp"
#include "diplab/errors.hpp"
#include "diplab/generators.hpp"
#include "diplab/oracles.hpp"
#include "diplab/permutation.hpp"

using namespace diplab;
using diplab::test::graph_of;
using diplab::test::TamperProver;

namespace {

std::size_t rejections(const NetworkConfig& cfg, const Protocol& protocol, const Prover& prover,
                       std::uint64_t trials) {
  std::size_t rejected = 0;
  for (std::uint64_t s = 0; s < trials; ++s) rejected += !run_protocol(cfg, protocol, prover, s).accepted;
  return rejected;
}

// Edits one node's cograph certificate in place.
template <typename F>
TamperProver edit_cograph(NodeIndex v, F change) {
  return TamperProver([v, change](Certificates& certs, const ProverContext& ctx) {
    auto& bits = certs.at(ctx.cfg->id(v));
    CographCert c = decode_cograph_cert(bits, *ctx.enc);
    change(c, *ctx.field);
    bits = encode(c, *ctx.enc);
  });
}

std::vector<CopiedEntry> entries_of(const NetworkConfig& cfg, std::span<const CographCert> certs) {
  std::vector<CopiedEntry> out;
  for (NodeIndex v = 0; v < cfg.size(); ++v) {
    out.push_back({cfg.id(v), certs[v].fresh, certs[v].a, certs[v].b});
  }
  return out;
}

}  // namespace

TEST_SUITE("cograph") {
  TEST_CASE("K3 certificates") {
    const NetworkConfig cfg(graphs::complete(3));
    const Field f(101);
    const auto certs = prove_cograph(cfg, 2, f);
    REQUIRE(certs.size() == 3);
    CHECK(certs[0].role == TreeRole::root);
    for (NodeIndex v = 0; v < 3; ++v) CHECK(certs[v].fresh == v + 1);
    CHECK(certs[0].a == 2);
    CHECK(certs[1].a == 4);
    CHECK(certs[2].a == 8);
    CHECK(certs[0].b == 12);
    CHECK(certs[1].b == 10);
    CHECK(certs[2].b == 6);
  }

  TEST_CASE("K3 referee trace and reconstruction") {
    const NetworkConfig cfg(graphs::complete(3));
    const Field f(101);
    const auto certs = prove_cograph(cfg, 2, f);
    const auto outcome = root_referee(entries_of(cfg, certs), f);
    REQUIRE(outcome.accept);
    const RefereeLog expected{{1, 2, true}, {2, 3, true}};
    CHECK(outcome.log == expected);
    CHECK(reconstruct(outcome.log, 3) == graphs::complete(3));
  }

  TEST_CASE("referee edge cases") {
    const Field f(kMersenne61);
    const std::vector<CopiedEntry> single{{7, 1, 5, 0}};
    const auto alone = root_referee(single, f);
    CHECK(alone.accept);
    CHECK(alone.log.empty());
    const NetworkConfig p4(graphs::path(4));
    CHECK_FALSE(root_referee(entries_of(p4, prove_cograph(p4, 12345, f)), f).accept);
    const NetworkConfig k3(graphs::complete(3));
    auto entries = entries_of(k3, prove_cograph(k3, 99, f));
    entries[1].fresh = entries[0].fresh;
    CHECK_FALSE(root_referee(entries, f).accept);
    entries = entries_of(k3, prove_cograph(k3, 99, f));
    entries[2].id = entries[0].id;
    CHECK_FALSE(root_referee(entries, f).accept);
  }

  TEST_CASE("reconstruction from logs") {
    CHECK(reconstruct({{1, 2, false}}, 2) == Graph(2));
    CHECK(reconstruct({}, 1) == Graph(1));
    CHECK_THROWS_AS(reconstruct({}, 2), MalformedLog);
    CHECK_THROWS_AS(reconstruct({{1, 3, true}}, 2), MalformedLog);
    CHECK_THROWS_AS(reconstruct({{1, 2, true}, {1, 3, true}}, 3), MalformedLog);
    CHECK_THROWS_AS(reconstruct({{1, 2, true}, {2, 1, true}}, 3), MalformedLog);
  }

  TEST_CASE("single node") {
    const NetworkConfig cfg(Graph(1));
    const auto certs = prove_cograph(cfg, 17, Field(101));
    REQUIRE(certs.size() == 1);
    CHECK(certs[0].role == TreeRole::root);
    CHECK(certs[0].a == 17);
    CHECK(certs[0].b == 0);
    const CographProtocol cograph;
    CHECK(run_protocol(cfg, cograph, HonestProver(), 3).accepted);
  }

  TEST_CASE("honest runs") {
    const CographProtocol cograph;
    const HonestProver honest;
    CHECK(rejections(NetworkConfig(graphs::complete(3)), cograph, honest, 20) == 0);
    CHECK(rejections(NetworkConfig(graphs::star(5)), cograph, honest, 20) == 0);
    CHECK(rejections(NetworkConfig(graphs::path(4)), cograph, honest, 20) == 20);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto cfg = gen_random_cograph(2 + s, s);
      const auto run = run_protocol(cfg, cograph, honest, s);
      REQUIRE(run.accepted);
      const auto log = CographProtocol::referee_log(cfg, run);
      REQUIRE(log.has_value());
      const auto fresh = fresh_by_rank(cfg);
      std::vector<NodeIndex> to_fresh(cfg.size());
      for (NodeIndex v = 0; v < cfg.size(); ++v) to_fresh[v] = static_cast<NodeIndex>(fresh[v] - 1);
      CHECK(reconstruct(*log, cfg.size()) == relabel(cfg.graph(), to_fresh));
    }
  }

  TEST_CASE("local checks catch tampering") {
    const CographProtocol cograph;
    const NetworkConfig k3(graphs::complete(3));
    const auto bumped = edit_cograph(1, [](CographCert& c, const Field& f) { c.b = f.add(c.b, 1); });
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto run = run_protocol(k3, cograph, bumped, s);
      CHECK_FALSE(run.node_accept[1]);
      CHECK(run.tags[1] == "fingerprint");
    }
    // K_{2,3}: node 3 is mid with node 2 below it
    const NetworkConfig k23(graph_of(5, {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}));
    const auto copied = edit_cograph(2, [](CographCert& c, const Field& f) {
      REQUIRE(c.child_copy.has_value());
      c.child_copy->a = f.add(c.child_copy->a, 1);
    });
    CHECK(run_protocol(k23, cograph, HonestProver(), 1).accepted);
    const auto run = run_protocol(k23, cograph, copied, 1);
    CHECK_FALSE(run.node_accept[2]);
    CHECK(run.tags[2] == "copy");
  }

  TEST_CASE("a predicate on the reconstruction") {
    const CographProtocol triangle_free([](const Graph& g) {
      return !find_induced_cycle(g, 3).has_value();
    });
    CHECK(run_protocol(NetworkConfig(graphs::cycle(4)), triangle_free, HonestProver(), 1).accepted);
    const auto run = run_protocol(NetworkConfig(graphs::complete(3)), triangle_free, HonestProver(), 1);
    CHECK_FALSE(run.accepted);
    CHECK(std::count(run.tags.begin(), run.tags.end(), "predicate") == 1);
  }

  TEST_CASE("cert swap on K3") {
    const CographProtocol cograph;
    const auto swap = make_adversary(AdversaryKind::cert_swap);
    CHECK(rejections(NetworkConfig(graphs::complete(3)), cograph, *swap, 50) == 50);
  }

  TEST_CASE("certificate encoding round trip") {
    const NetworkConfig cfg = gen_random_cograph(20, 4);
    const Field f(kMersenne61);
    const Encoding enc = Encoding::for_network(cfg, f);
    for (const auto& c : prove_cograph(cfg, 777, f)) {
      const BitString bits = encode(c, enc);
      REQUIRE(decode_cograph_cert(bits, enc) == c);
    }
  }
}

TEST_SUITE("dh") {
  TEST_CASE("P3 first round") {
    const NetworkConfig cfg(graphs::path(3));
    const PruningSequence seq(3, {{0, PruneRole::pending, 1}, {1, PruneRole::true_twin, 2}});
    const auto r1 = prove_dh_round1(cfg, seq);
    CHECK(r1[0].role == DhRole::pending);
    CHECK(r1[0].pending_target == NodeId{2});
    CHECK(r1[0].ant == NodeId{2});
    CHECK(r1[0].pending_count == 0);
    CHECK_FALSE(r1[0].m_leaf.has_value());
    CHECK(r1[1].role == DhRole::true_twin);
    CHECK(r1[1].twin == NodeId{3});
    CHECK(r1[1].ant == NodeId{3});
    CHECK(r1[1].pending_count == 1);
    CHECK(r1[1].m_leaf == std::pair<NodeId, Element>{1, 1});
    CHECK(r1[2].role == DhRole::final);
    CHECK(r1[2].twins_count == 1);
    CHECK(r1[2].pending_count == 0);  // node 1 hangs off node 2
    for (NodeIndex v = 0; v < 3; ++v) CHECK(r1[v].pos == v + 1);
  }

  TEST_CASE("P3 third round") {
    const NetworkConfig cfg(graphs::path(3));
    const PruningSequence seq(3, {{0, PruneRole::pending, 1}, {1, PruneRole::true_twin, 2}});
    const Field f(101);
    const auto r3 = prove_dh_round3(cfg, seq, 2, f);
    CHECK(r3[0].a0 == 2);
    CHECK(r3[1].a0 == 4);
    CHECK(r3[2].a0 == 8);
    CHECK(r3[0].b0 == 4);
    CHECK(r3[1].b0 == 10);
    CHECK(r3[2].b0 == 4);
    CHECK(r3[1].a_pi == 4);
    CHECK(r3[1].b_pi == 8);
    // node 1 has neither twins nor pending children
    CHECK(r3[0].a_pi == r3[0].a0);
    CHECK(r3[0].b_pi == r3[0].b0);
    const auto r1 = prove_dh_round1(cfg, seq);
    const NodeIndex root = *cfg.index_of(r1[0].perm.root_id);
    CHECK(r3[root].subtree_sum == 14);
  }

  TEST_CASE("K2") {
    const NetworkConfig cfg(graphs::complete(2));
    const auto r1 = prove_dh_round1(cfg, dh_prover_sequence(cfg.graph()));
    CHECK(r1[0].role == DhRole::true_twin);
    CHECK(r1[0].twin == NodeId{2});
    CHECK(r1[1].role == DhRole::final);
    const DhProtocol dh;
    CHECK(rejections(cfg, dh, HonestProver(), 10) == 0);
  }

  TEST_CASE("certificate encoding round trip") {
    const auto inst = gen_random_dh(25, 9);
    const Field f(kMersenne61);
    const Encoding enc = Encoding::for_network(inst.config, f);
    for (const auto& c : prove_dh_round1(inst.config, inst.sequence)) {
      REQUIRE(decode_dh_r1(encode(c, enc), enc) == c);
    }
    for (const auto& c : prove_dh_round3(inst.config, inst.sequence, 31337, f)) {
      REQUIRE(decode_dh_r3(encode(c, enc), enc) == c);
    }
  }

  TEST_CASE("honest runs") {
    const DhProtocol dh;
    const HonestProver honest;
    CHECK(rejections(NetworkConfig(graphs::path(3)), dh, honest, 10) == 0);
    CHECK(rejections(NetworkConfig(graphs::cycle(5)), dh, honest, 10) == 10);
    CHECK(rejections(gen_random_dh(32, 1).config, dh, honest, 100) == 0);
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto inst = gen_random_dh(1 + s, s + 100);
      REQUIRE(run_protocol(inst.config, dh, honest, s).accepted);
    }
    const auto twelve = gen_random_dh(12, 12);
    const auto run = run_protocol(twelve.config, dh, honest, 5);
    CHECK(std::all_of(run.node_accept.begin(), run.node_accept.end(), [](bool b) { return b; }));
  }

  TEST_CASE("pending target with a smaller position") {
    // 1-2-3 pruned as 1 then 2: node 2 claims node 1 as its target instead of node 3
    const NetworkConfig cfg(graphs::path(3));
    const PruningSequence seq(3, {{0, PruneRole::pending, 1}, {1, PruneRole::pending, 2}});
    class Fixed : public Prover {
     public:
      explicit Fixed(const PruningSequence& s, bool tamper) : seq_(s), tamper_(tamper) {}
      std::string name() const override { return "fixed"; }
      Certificates certify(const Protocol&, const ProverContext& ctx) const override {
        Certificates certs = DhProtocol::certify_sequence(ctx, seq_);
        if (tamper_ && ctx.merlin_round == 0) {
          DhCertR1 c = decode_dh_r1(certs.at(2), *ctx.enc);
          c.pending_target = 1;
          certs[2] = encode(c, *ctx.enc);
        }
        return certs;
      }

     private:
      PruningSequence seq_;
      bool tamper_;
    };
    const DhProtocol dh;
    CHECK(rejections(cfg, dh, Fixed(seq, false), 10) == 0);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto run = run_protocol(cfg, dh, Fixed(seq, true), s);
      CHECK_FALSE(run.node_accept[1]);
      CHECK(run.tags[1] == "pending-role");
    }
  }

  TEST_CASE("every adversary fails on C5") {
    const DhProtocol dh;
    const NetworkConfig c5(graphs::cycle(5));
    for (auto kind : all_adversaries()) {
      const auto prover = make_adversary(kind);
      CHECK(rejections(c5, dh, *prover, 100) == 100);
    }
  }

  TEST_CASE("bit flips on members") {
    const DhProtocol dh;
    const auto flip = make_adversary(AdversaryKind::bit_flip);
    CHECK(rejections(gen_random_dh(20, 2).config, dh, *flip, 100) >= 99);
  }
}

TEST_SUITE("permutation") {
  TEST_CASE("honest positions pass") {
    const PermutationProtocol perm;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto cfg = gen_random_cograph(3 + s, s);
      REQUIRE(run_protocol(cfg, perm, HonestProver(), s).accepted);
    }
    CHECK(run_protocol(NetworkConfig(Graph(1)), perm, HonestProver(), 0).accepted);
  }

  TEST_CASE("duplicated positions fail") {
    const PermutationProtocol perm;
    const DuplicatePositionProver dup;
    const auto cfg = gen_random_dh(32, 77).config;
    const auto run = run_protocol(cfg, perm, dup, 3);
    CHECK_FALSE(run.accepted);
    CHECK(std::count(run.tags.begin(), run.tags.end(), "perm-root-identity") >= 1);
    CHECK(rejections(cfg, perm, dup, 200) == 200);
    CHECK_THROWS_AS(run_protocol(cfg, CographProtocol(), dup, 1), InvalidArgument);
  }

  TEST_CASE("explicit positions") {
    const NetworkConfig cfg(graphs::path(4));
    const Field f(kMersenne61);
    const std::vector<Element> repeated{1, 2, 2, 4};
    const auto fields = prove_permutation(cfg, repeated, 5, f);
    const NodeIndex root = *cfg.index_of(fields[0].root_id);
    CHECK(fields[root].subtree_count == 4);
    CHECK(fields[root].subtree_sum ==
          f.add(f.add(f.pow(5, 1), f.pow(5, 2)), f.add(f.pow(5, 2), f.pow(5, 4))));
    const PermFields lone{1, std::nullopt, 0, 1, 1, 5};
    CHECK(check_permutation(1, 1, lone, {}, 5, f).accept);
    CHECK(check_permutation(1, 0, lone, {}, 5, f).tag == "range");
    CHECK(check_permutation(1, 2, lone, {}, 5, f).tag == "range");
  }
}

TEST_SUITE("adversary") {
  TEST_CASE("names") {
    for (auto kind : all_adversaries()) {
      CHECK(parse_adversary(to_string(kind)) == kind);
      CHECK(make_adversary(kind)->name() == to_string(kind));
    }
    CHECK(parse_adversary("order-forge") == AdversaryKind::order_forge);
    CHECK_THROWS_AS(parse_adversary("oracle"), InvalidArgument);
    CHECK_THROWS_AS(make_adversary("nope"), InvalidArgument);
  }

  TEST_CASE("edits land in the class") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const std::size_t n = 5 + s % 20;
      const auto nc = gen_nonmember(GraphClass::cograph, n, s);
      const Graph co = edit_to_member(nc.graph(), GraphClass::cograph, s);
      CHECK(co.size() == n);
      CHECK(is_cograph_oracle(co));
      const auto nd = gen_nonmember(GraphClass::distance_hereditary, n, s);
      const Graph dh = edit_to_member(nd.graph(), GraphClass::distance_hereditary, s);
      CHECK(is_connected(dh));
      CHECK(is_dh_oracle(dh));
    }
    const Graph k4 = graphs::complete(4);
    const Graph edited = edit_to_member(k4, GraphClass::cograph, 1);
    CHECK(edited != k4);
    CHECK(is_cograph_oracle(edited));
  }

  TEST_CASE("forged orders are full sequences") {
    const Graph c6 = graphs::cycle(6);
    const auto seq = dh_forged_sequence(c6);
    CHECK(seq.node_count() == 6);
    CHECK(seq.steps().size() == 5);
    CHECK(dh_prover_sequence(c6).steps().size() == 5);
  }
}
