#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diplab/bcc_tree.hpp"
#include "diplab/engine.hpp"

namespace diplab {

enum class TreeRole { root = 0, mid = 1, leaf = 2 };

struct CopiedEntry {
  NodeId id = 0;
  Element fresh = 0;
  Element a = 0;
  Element b = 0;
  friend bool operator==(const CopiedEntry&, const CopiedEntry&) = default;
};

struct CographCert {
  TreeRole role = TreeRole::root;
  std::optional<NodeId> parent;
  std::optional<NodeId> child;
  NodeId root = 0;
  Element fresh = 0;  // relabelling into [1, n]
  Element a = 0;
  Element b = 0;
  std::optional<CopiedEntry> child_copy;

  friend bool operator==(const CographCert&, const CographCert&) = default;
};

const Schema& cograph_schema();
BitString encode(const CographCert& cert, const Encoding& enc);
CographCert decode_cograph_cert(const BitString& bits, const Encoding& enc);

struct RefereeRecord {
  Element removed = 0;   // fresh id
  Element survivor = 0;  // fresh id
  bool delta = false;
  friend bool operator==(const RefereeRecord&, const RefereeRecord&) = default;
};
using RefereeLog = std::vector<RefereeRecord>;

struct RefereeOutcome {
  bool accept = false;
  RefereeLog log;
  std::string reason;
};

// Twin-elimination referee over the entries gathered at the root.
RefereeOutcome root_referee(std::span<const CopiedEntry> entries, const Field& f);

// Inverse of the referee's elimination: node k-1 is fresh id k.
// Throws MalformedLog on inconsistent records.
Graph reconstruct(const RefereeLog& log, std::size_t n);

// Certificates the honest prover sends, by node index. Uses the two-level tree
// when the graph has one and a star claim around the smallest id otherwise.
std::vector<CographCert> prove_cograph(const NetworkConfig& cfg, Element t, const Field& f);

// Fresh ids by rank of the original ids.
std::vector<Element> fresh_by_rank(const NetworkConfig& cfg);

// Tree claim for arbitrary graphs: a highest-degree root, its neighbours at
// depth one, others greedily matched to a free adjacent depth-one node.
TwoLevelTree best_effort_tree(const NetworkConfig& cfg);

class CographProtocol : public Protocol {
 public:
  // The root additionally rejects when `predicate` fails on the reconstructed graph.
  using Predicate = std::function<bool(const Graph&)>;
  explicit CographProtocol(Predicate predicate = {}) : predicate_(std::move(predicate)) {}

  std::string name() const override { return "cograph"; }
  std::vector<RoundKind> shape() const override {
    return {RoundKind::shared_random, RoundKind::merlin};
  }
  std::optional<GraphClass> language() const override { return GraphClass::cograph; }
  const std::vector<Schema>& schemas() const override {
    static const std::vector<Schema> all{cograph_schema()};
    return all;
  }

  NodeDecision decide(const LocalView& view, std::span<const BitString> heard) const override;
  Certificates honest(const ProverContext& ctx) const override;
  Certificates forged(const ProverContext& ctx) const override;

  // Replays the root's referee from a finished run; nullopt without a
  // decodable root or when the referee rejects.
  static std::optional<RefereeLog> referee_log(const NetworkConfig& cfg, const RunResult& run);

 private:
  Predicate predicate_;
};

Certificates to_certificates(const NetworkConfig& cfg, std::span<const CographCert> certs,
                             const Encoding& enc);

}  // namespace diplab
