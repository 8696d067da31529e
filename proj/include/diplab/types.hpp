#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace diplab {

// Internal node handle, 0-based.
using NodeIndex = std::size_t;
// Network identifier assigned by the configuration (1-based, injective).
using NodeId = std::uint64_t;

// Prime-field elements and moduli. Primes of size 3 n^8 exceed 64 bits for n >= 256.
__extension__ typedef unsigned __int128 Element;

std::string to_string_u128(Element value);
std::optional<Element> parse_u128(std::string_view text);

// Number of bits needed to write every value in [0, bound).
unsigned bit_width_below(Element bound);
// Number of bits needed to write every value in [0, max_value].
inline unsigned bit_width_upto(Element max_value) { return bit_width_below(max_value + 1); }

}  // namespace diplab
