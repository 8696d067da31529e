#include "diplab/report.hpp"

#include "diplab/cograph_protocol.hpp"

namespace diplab {

nlohmann::ordered_json run_report(const NetworkConfig& cfg, const RunResult& run) {
  nlohmann::ordered_json j;
  j["protocol"] = run.protocol;
  j["seed"] = run.seed;
  j["p"] = to_string_u128(run.field.modulus());
  const auto t = run.first_randomness();
  j["t"] = t ? nlohmann::ordered_json(to_string_u128(*t)) : nlohmann::ordered_json(nullptr);
  j["accepted"] = run.accepted;
  j["rejecting_nodes"] = run.rejecting_ids(cfg);
  j["max_cert_bits"] = run.bandwidth.max_cert_bits;
  j["max_broadcast_bits"] = run.bandwidth.max_broadcast_bits;
  j["cap_violated"] = run.cap_violated;
  auto tags = nlohmann::ordered_json::array();
  for (NodeIndex v : cfg.indices_by_id()) {
    if (!run.node_accept[v]) tags.push_back({{"id", cfg.id(v)}, {"tag", run.tags[v]}});
  }
  j["failure_tags"] = std::move(tags);
  if (run.protocol == "cograph") {
    auto log = nlohmann::ordered_json::array();
    if (auto records = CographProtocol::referee_log(cfg, run)) {
      for (const auto& r : *records) {
        log.push_back({static_cast<std::uint64_t>(r.removed), static_cast<std::uint64_t>(r.survivor),
                       r.delta ? 1 : 0});
      }
    }
    j["referee_log"] = std::move(log);
  }
  return j;
}

}  // namespace diplab
