#pragma once

#include <string>

#include "json.hpp"

#include "diplab/engine.hpp"

namespace diplab {

// {"protocol", "seed", "p", "t", "accepted", "rejecting_nodes", "max_cert_bits",
//  "max_broadcast_bits", "cap_violated", "failure_tags"} plus "referee_log" for
// cograph runs. p and t are decimal strings.
nlohmann::ordered_json run_report(const NetworkConfig& cfg, const RunResult& run);

}  // namespace diplab
