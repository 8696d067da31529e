#pragma once

#include <optional>
#include <span>
#include <vector>

#include "diplab/field.hpp"
#include "diplab/graph.hpp"
#include "diplab/pruning.hpp"

namespace diplab {

// Per-step vectors of the surviving nodes: snapshot[i][v] is v's entry before
// step i is applied (snapshot[n-1] holds only the survivor).
using VectorSnapshots = std::vector<std::vector<std::optional<VectorEntry>>>;

// True iff t is a root of a nonzero member of the canonical family along seq:
// phi_w, and phi_u - phi_v, q_u - q_v, qbar_u - qbar_v over surviving pairs at
// every step. exponents[v] >= 1 is v's monomial degree.
bool canonical_family_root_count(const Graph& g, const PruningSequence& seq,
                                 std::span<const Element> exponents, Element t, const Field& f);
// Exponents default to the sequence positions.
bool canonical_family_root_count(const Graph& g, const PruningSequence& seq, Element t,
                                 const Field& f);

// Direct evaluation of the symbolically maintained family at every step.
VectorSnapshots symbolic_vectors(const Graph& g, const PruningSequence& seq,
                                 std::span<const Element> exponents, Element t, const Field& f);

// The same snapshots produced by twin_merge / pending_delete alone.
// Throws FingerprintCollision when t makes two twins collide.
VectorSnapshots fold_vectors(const Graph& g, const PruningSequence& seq,
                             std::span<const Element> exponents, Element t, const Field& f);

// Twin order the cograph referee follows: repeatedly remove the smaller key of
// the first twin pair in (smaller key, larger key) order. keys must be
// distinct. nullopt when the elimination gets stuck.
std::optional<PruningSequence> canonical_order(const Graph& g, std::span<const Element> keys);

std::vector<Element> positions_as_exponents(const PruningSequence& seq);

}  // namespace diplab
