#include "diplab/engine.hpp"

#include <algorithm>
#include <exception>

#include "diplab/errors.hpp"
#include "diplab/random.hpp"

namespace diplab {

BitString Protocol::compose(const LocalView& view) const {
  BitWriter w;
  w.write(view.id, view.enc->id_bits);
  for (const auto& cert : view.certificates) w.append(cert);
  return w.take();
}

std::size_t Protocol::merlin_rounds() const {
  const auto s = shape();
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), RoundKind::merlin));
}

std::size_t Protocol::field_elements(std::size_t merlin_round, const BitString& cert,
                                     const Encoding& enc) const {
  const auto& all = schemas();
  try {
    return element_count(all.at(merlin_round), parse_cert(all.at(merlin_round), cert, enc));
  } catch (const EncodingError&) {
    return 0;
  }
}

ParsedBroadcast parse_broadcast(std::span<const Schema> schemas, const BitString& bits,
                                const Encoding& enc) {
  BitReader r(bits);
  ParsedBroadcast out;
  out.id = static_cast<NodeId>(r.read(enc.id_bits));
  for (const auto& schema : schemas) out.certificates.push_back(read_cert(schema, r, enc));
  r.expect_end();
  return out;
}

std::vector<Record> parse_certificates(std::span<const Schema> schemas, const LocalView& view) {
  if (view.certificates.size() != schemas.size()) throw EncodingError("certificate count mismatch");
  std::vector<Record> out;
  for (std::size_t i = 0; i < schemas.size(); ++i) {
    out.push_back(parse_cert(schemas[i], view.certificates[i], *view.enc));
  }
  return out;
}

std::vector<NodeId> RunResult::rejecting_ids(const NetworkConfig& cfg) const {
  std::vector<NodeId> out;
  for (NodeIndex v = 0; v < node_accept.size(); ++v) {
    if (!node_accept[v]) out.push_back(cfg.id(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Element> RunResult::first_randomness() const {
  for (const auto& r : transcript.rounds) {
    if (r.kind == RoundKind::shared_random) return r.randomness;
  }
  return std::nullopt;
}

Field field_for(const NetworkConfig& cfg, const RunOptions& opts) {
  return opts.field ? *opts.field : choose_prime(cfg.size(), opts.prime);
}

namespace {

NodeDecision decide_guarded(const Protocol& protocol, const LocalView& view,
                            std::span<const BitString> heard) {
  try {
    return protocol.decide(view, heard);
  } catch (const EncodingError&) {
    return NodeDecision::reject("decode");
  } catch (const FingerprintCollision&) {
    return NodeDecision::reject("collision");
  }
}

}  // namespace

RunResult run_protocol(const NetworkConfig& cfg, const Protocol& protocol, const Prover& prover,
                       std::uint64_t seed, const RunOptions& opts) {
  const std::size_t n = cfg.size();
  RunResult result;
  result.protocol = protocol.name();
  result.seed = seed;
  result.field = field_for(cfg, opts);
  const Field& field = result.field;
  const Encoding enc = Encoding::for_network(cfg, field);

  ProverContext ctx;
  ctx.cfg = &cfg;
  ctx.field = &field;
  ctx.enc = &enc;
  ctx.merlin_rounds = protocol.merlin_rounds();
  ctx.run_seed = seed;

  std::vector<LocalView> views(n);
  std::vector<std::size_t> carried(n, 0);  // field elements per node over all rounds
  for (NodeIndex v = 0; v < n; ++v) views[v] = {cfg.id(v), {}, {}, &enc, &field};

  auto& bw = result.bandwidth;
  const auto shape = protocol.shape();
  for (std::size_t round = 0; round < shape.size(); ++round) {
    TranscriptRound record;
    record.kind = shape[round];
    if (shape[round] == RoundKind::shared_random) {
      Rng rng(derive_seed(seed, 0xA57u, round));
      record.randomness = rng.below(field.modulus());
      record.random_bits = BitWriter().write(record.randomness, enc.element_bits).take();
      bw.shared_random_bits += record.random_bits.size();
      ctx.randomness.push_back(record.randomness);
      for (auto& view : views) view.randomness.push_back(record.randomness);
    } else {
      record.certificates = prover.certify(protocol, ctx);
      for (const auto& [id, bits] : record.certificates) {
        if (!cfg.index_of(id)) {
          throw MalformedProver("certificate for unknown node id " + std::to_string(id));
        }
      }
      std::size_t max_bits = 0, max_nonfield = 0;
      for (NodeIndex v = 0; v < n; ++v) {
        auto it = record.certificates.find(cfg.id(v));
        BitString cert = it == record.certificates.end() ? BitString{} : it->second;
        const std::size_t bits = cert.size();
        const std::size_t elements = protocol.field_elements(ctx.merlin_round, cert, enc);
        carried[v] += elements;
        max_bits = std::max(max_bits, bits);
        max_nonfield = std::max(max_nonfield, bits - elements * enc.element_bits);
        if (opts.cap_bits && bits > *opts.cap_bits) result.cap_violated = true;
        views[v].certificates.push_back(std::move(cert));
      }
      bw.max_cert_bits.push_back(max_bits);
      bw.max_cert_nonfield_bits.push_back(max_nonfield);
      ++ctx.merlin_round;
    }
    result.transcript.rounds.push_back(std::move(record));
  }

  // Verification: every broadcast is fixed before any is delivered.
  auto& broadcasts = result.transcript.broadcasts;
  broadcasts.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    broadcasts[v] = protocol.compose(views[v]);
    const std::size_t bits = broadcasts[v].size();
    bw.max_broadcast_bits = std::max(bw.max_broadcast_bits, bits);
    bw.max_broadcast_nonfield_bits =
        std::max(bw.max_broadcast_nonfield_bits, bits - carried[v] * enc.element_bits);
  }

  std::vector<NodeDecision> decisions(n);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) if (opts.policy == ExecPolicy::parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto v = static_cast<NodeIndex>(i);
    std::vector<BitString> heard;
    const auto& around = cfg.graph().neighbors(v);
    for (auto w = around.find_first(); w != NodeSet::npos; w = around.find_next(w)) {
      heard.push_back(broadcasts[w]);
    }
    try {
      decisions[v] = decide_guarded(protocol, views[v], heard);
    } catch (...) {
#pragma omp critical(diplab_engine_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  result.node_accept.resize(n);
  result.tags.resize(n);
  result.accepted = !result.cap_violated;
  for (NodeIndex v = 0; v < n; ++v) {
    result.node_accept[v] = decisions[v].accept;
    result.tags[v] = decisions[v].tag;
    if (!decisions[v].accept) result.accepted = false;
  }
  return result;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t instance, std::size_t trial) {
  return derive_seed(seed, instance, trial);
}

std::vector<double> estimate_error(std::span<const NetworkConfig> instances,
                                   const Protocol& protocol, const Prover& prover,
                                   std::size_t trials, std::uint64_t seed,
                                   const RunOptions& opts) {
  if (trials == 0) throw InvalidArgument("estimate_error: trials must be >= 1");
  RunOptions inner = opts;
  inner.policy = ExecPolicy::serial;
  const std::size_t total = instances.size() * trials;
  std::vector<char> accepted(total, 0);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic) if (opts.policy == ExecPolicy::parallel)
  for (std::int64_t job = 0; job < count; ++job) {
    const std::size_t i = static_cast<std::size_t>(job) / trials;
    const std::size_t k = static_cast<std::size_t>(job) % trials;
    try {
      accepted[job] =
          run_protocol(instances[i], protocol, prover, trial_seed(seed, i, k), inner).accepted;
    } catch (...) {
#pragma omp critical(diplab_estimate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> out(instances.size(), 0.0);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::size_t hits = 0;
    for (std::size_t k = 0; k < trials; ++k) hits += accepted[i * trials + k];
    out[i] = static_cast<double>(hits) / static_cast<double>(trials);
  }
  return out;
}

}  // namespace diplab
