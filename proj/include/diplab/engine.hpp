#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diplab/bits.hpp"
#include "diplab/field.hpp"
#include "diplab/network.hpp"
#include "diplab/oracles.hpp"
#include "diplab/parallel.hpp"

namespace diplab {

enum class RoundKind { shared_random, merlin };

// Certificates of one Merlin round, keyed by node id.
using Certificates = std::map<NodeId, BitString>;

struct TranscriptRound {
  RoundKind kind = RoundKind::merlin;
  Element randomness = 0;  // shared_random only
  BitString random_bits;   // randomness at element width
  Certificates certificates;
};

struct Transcript {
  std::vector<TranscriptRound> rounds;
  std::vector<BitString> broadcasts;  // by node index

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

inline bool operator==(const TranscriptRound& a, const TranscriptRound& b) {
  return a.kind == b.kind && a.randomness == b.randomness && a.random_bits == b.random_bits &&
         a.certificates == b.certificates;
}

// Everything a node holds before the verification round.
struct LocalView {
  NodeId id = 0;
  std::vector<BitString> certificates;  // one per Merlin round
  std::vector<Element> randomness;      // one per Arthur round
  const Encoding* enc = nullptr;
  const Field* field = nullptr;
};

struct NodeDecision {
  bool accept = true;
  std::string tag;  // reason for rejection

  static NodeDecision ok() { return {}; }
  static NodeDecision reject(std::string why) { return {false, std::move(why)}; }
};

// What a prover sees when asked for one Merlin round.
struct ProverContext {
  const NetworkConfig* cfg = nullptr;
  const Field* field = nullptr;
  const Encoding* enc = nullptr;
  std::size_t merlin_round = 0;
  std::size_t merlin_rounds = 0;
  std::vector<Element> randomness;  // Arthur draws so far
  std::uint64_t run_seed = 0;
};

class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string name() const = 0;
  virtual std::vector<RoundKind> shape() const = 0;
  // Class recognised by the protocol; nullopt for sub-protocols.
  virtual std::optional<GraphClass> language() const = 0;

  // Default broadcast: own id followed by every certificate.
  BitString compose(const LocalView& view) const;
  virtual NodeDecision decide(const LocalView& view, std::span<const BitString> heard) const = 0;

  virtual Certificates honest(const ProverContext& ctx) const = 0;
  // Syntactically valid certificates for a false pruning order.
  virtual Certificates forged(const ProverContext& ctx) const { return honest(ctx); }

  // Certificate layout of each Merlin round.
  virtual const std::vector<Schema>& schemas() const = 0;

  // Field elements carried by one certificate (0 when undecodable).
  std::size_t field_elements(std::size_t merlin_round, const BitString& cert,
                             const Encoding& enc) const;

  std::size_t merlin_rounds() const;
};

// A default-layout broadcast: sender id and its decoded certificates.
struct ParsedBroadcast {
  NodeId id = 0;
  std::vector<Record> certificates;
};

// Throws EncodingError on malformed input.
ParsedBroadcast parse_broadcast(std::span<const Schema> schemas, const BitString& bits,
                                const Encoding& enc);
std::vector<Record> parse_certificates(std::span<const Schema> schemas, const LocalView& view);

class Prover {
 public:
  virtual ~Prover() = default;
  virtual std::string name() const = 0;
  virtual Certificates certify(const Protocol& protocol, const ProverContext& ctx) const = 0;
};

class HonestProver : public Prover {
 public:
  std::string name() const override { return "honest"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override {
    return protocol.honest(ctx);
  }
};

struct BandwidthReport {
  std::vector<std::size_t> max_cert_bits;           // per Merlin round
  std::vector<std::size_t> max_cert_nonfield_bits;  // same, minus field payload
  std::size_t max_broadcast_bits = 0;
  std::size_t max_broadcast_nonfield_bits = 0;
  std::size_t shared_random_bits = 0;

  friend bool operator==(const BandwidthReport&, const BandwidthReport&) = default;
};

struct RunOptions {
  PrimeMode prime = PrimeMode::fixed;
  std::optional<Field> field;             // overrides `prime`
  std::optional<std::size_t> cap_bits;    // per-certificate bound
  ExecPolicy policy = ExecPolicy::serial;  // node decide steps
};

struct RunResult {
  std::string protocol;
  std::uint64_t seed = 0;
  Field field{2};
  bool accepted = false;
  bool cap_violated = false;
  std::vector<bool> node_accept;   // by node index
  std::vector<std::string> tags;   // rejection reasons by node index
  BandwidthReport bandwidth;
  Transcript transcript;

  std::vector<NodeId> rejecting_ids(const NetworkConfig& cfg) const;
  std::optional<Element> first_randomness() const;
};

Field field_for(const NetworkConfig& cfg, const RunOptions& opts);

// Draws one field element per Arthur round from `seed`, asks the prover for
// each Merlin round, then runs the one-round verification.
// Throws MalformedProver on certificates for unknown ids.
RunResult run_protocol(const NetworkConfig& cfg, const Protocol& protocol, const Prover& prover,
                       std::uint64_t seed, const RunOptions& opts = {});

// Acceptance frequency per instance over `trials` independent seeds.
std::vector<double> estimate_error(std::span<const NetworkConfig> instances,
                                   const Protocol& protocol, const Prover& prover,
                                   std::size_t trials, std::uint64_t seed,
                                   const RunOptions& opts = {});

// Seed used for trial `trial` of instance `instance`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t instance, std::size_t trial);

}  // namespace diplab
