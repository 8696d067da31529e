#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "diplab/engine.hpp"

namespace diplab {

// Probe provers. All but honest try to make a non-member pass; none of them
// is a proof of soundness.
enum class AdversaryKind { honest, wrong_graph, bit_flip, cert_swap, order_forge };

struct AdversaryParams {
  std::size_t flips = 1;  // bit-flip only
};

std::string_view to_string(AdversaryKind kind);
// Throws InvalidArgument on unknown names.
AdversaryKind parse_adversary(std::string_view name);
const std::vector<AdversaryKind>& all_adversaries();

// Strategies draw their randomness from the run seed.
std::unique_ptr<Prover> make_adversary(AdversaryKind kind, AdversaryParams params = {});
std::unique_ptr<Prover> make_adversary(std::string_view kind, AdversaryParams params = {});

// Nearby member of the class. Nodes are re-added in reverse elimination order and
// any node that is not a twin (or DH pendant) of an earlier one has its back-edges
// rewired to the nearest such neighbourhood. A member input first gets one pair toggled.
Graph edit_to_member(const Graph& g, GraphClass cls, std::uint64_t seed);

}  // namespace diplab
