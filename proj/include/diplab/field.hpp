#pragma once

#include <span>
#include <vector>

#include "diplab/types.hpp"

namespace diplab {

enum class PrimeMode { fixed, paper };

// Arithmetic modulo a prime p < 2^126.
class Field {
 public:
  explicit Field(Element p);

  Element modulus() const { return p_; }
  // ceil(log2 p): the encoded width of one element.
  unsigned element_bits() const { return bits_; }

  Element reduce(Element x) const { return x % p_; }
  Element add(Element x, Element y) const {
    const Element s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element x, Element y) const { return x >= y ? x - y : p_ - (y - x); }
  Element neg(Element x) const { return x == 0 ? 0 : p_ - x; }
  Element mul(Element x, Element y) const;
  Element pow(Element base, Element exponent) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  Element p_;
  unsigned bits_;
};

inline constexpr Element kMersenne61 = (Element{1} << 61) - 1;

// Deterministic Miller-Rabin, exact below 3.3e24.
bool is_prime(Element x);

// fixed: 2^61 - 1 (n <= 10^7). paper: smallest prime >= 3 n^8 (n <= 1000).
Field choose_prime(std::size_t n, PrimeMode mode);

// t^exponent; exponent >= 1.
Element phi_eval(Element exponent, Element t, const Field& f);
// Sum of t^e over the list.
Element neighborhood_eval(std::span<const Element> exponents, Element t, const Field& f);

struct VectorEntry {
  Element a = 0;
  Element b = 0;
  friend bool operator==(const VectorEntry&, const VectorEntry&) = default;
};

struct MergeResult {
  VectorEntry entry;
  bool delta = false;  // the pair was adjacent (true twins)
};

// Folds twin v into survivor u. Throws FingerprintCollision when u.a == v.a.
MergeResult twin_merge(const VectorEntry& u, const VectorEntry& v, const Field& f);

// Removes a pending neighbour whose own fingerprint is v_a.
VectorEntry pending_delete(const VectorEntry& u, Element v_a, const Field& f);

// t^0 .. t^max_exponent.
class PowerTable {
 public:
  PowerTable(Element t, std::size_t max_exponent, const Field& f);
  Element operator[](std::size_t e) const { return powers_.at(e); }
  std::size_t max_exponent() const { return powers_.size() - 1; }

 private:
  std::vector<Element> powers_;
};

}  // namespace diplab
