#include "diplab/types.hpp"

#include <algorithm>

namespace diplab {

std::string to_string_u128(Element value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<Element> parse_u128(std::string_view text) {
  if (text.empty() || text.size() > 39) return std::nullopt;
  Element value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    const Element next = value * 10 + static_cast<unsigned>(c - '0');
    if (next / 10 != value) return std::nullopt;
    value = next;
  }
  return value;
}

unsigned bit_width_below(Element bound) {
  unsigned bits = 0;
  while (bits < 128 && (Element{1} << bits) < bound) ++bits;
  return bits;
}

}  // namespace diplab
