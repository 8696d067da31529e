#include "diplab/field.hpp"

#include <array>
#include <string>

#include "diplab/errors.hpp"

namespace diplab {

namespace {

constexpr Element kU64Limit = Element{1} << 64;

Element mulmod(Element x, Element y, Element p) {
  if (p <= kU64Limit) return ((x % p) * (y % p)) % p;
  Element result = 0;
  x %= p;
  while (y != 0) {
    if (y & 1) {
      result += x;
      if (result >= p) result -= p;
    }
    x += x;
    if (x >= p) x -= p;
    y >>= 1;
  }
  return result;
}

Element powmod(Element base, Element exponent, Element p) {
  Element result = 1 % p;
  base %= p;
  while (exponent != 0) {
    if (exponent & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exponent >>= 1;
  }
  return result;
}

}  // namespace

Field::Field(Element p) : p_(p), bits_(bit_width_below(p)) {
  if (p < 2 || p >= (Element{1} << 126)) throw InvalidArgument("field modulus out of range");
}

Element Field::mul(Element x, Element y) const { return mulmod(x, y, p_); }
Element Field::pow(Element base, Element exponent) const { return powmod(base, exponent, p_); }

bool is_prime(Element x) {
  static constexpr std::array<unsigned, 13> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  if (x < 2) return false;
  for (unsigned q : bases) {
    if (x % q == 0) return x == q;
  }
  Element d = x - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned q : bases) {
    Element y = powmod(q, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s && composite; ++r) {
      y = mulmod(y, y, x);
      if (y == x - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

Field choose_prime(std::size_t n, PrimeMode mode) {
  if (n == 0) throw InvalidArgument("choose_prime: n must be >= 1");
  if (mode == PrimeMode::fixed) {
    if (n > 10'000'000) throw OutOfRange("fixed prime supports n <= 10^7");
    return Field(kMersenne61);
  }
  if (n > 1000) throw OutOfRange("paper-mode prime supports n <= 1000");
  Element candidate = 3;
  for (int i = 0; i < 8; ++i) candidate *= n;
  while (!is_prime(candidate)) ++candidate;
  return Field(candidate);
}

Element phi_eval(Element exponent, Element t, const Field& f) {
  if (exponent == 0) throw InvalidArgument("phi_eval: exponent must be >= 1");
  return f.pow(t, exponent);
}

Element neighborhood_eval(std::span<const Element> exponents, Element t, const Field& f) {
  Element sum = 0;
  for (Element e : exponents) sum = f.add(sum, phi_eval(e, t, f));
  return sum;
}

MergeResult twin_merge(const VectorEntry& u, const VectorEntry& v, const Field& f) {
  if (u.a == v.a) throw FingerprintCollision("twin_merge: equal fingerprints");
  const bool delta = f.add(u.a, u.b) == f.add(v.a, v.b);
  return {{f.add(u.a, v.a), delta ? f.sub(u.b, v.a) : u.b}, delta};
}

VectorEntry pending_delete(const VectorEntry& u, Element v_a, const Field& f) {
  return {u.a, f.sub(u.b, f.reduce(v_a))};
}

PowerTable::PowerTable(Element t, std::size_t max_exponent, const Field& f)
    : powers_(max_exponent + 1) {
  powers_[0] = 1 % f.modulus();
  for (std::size_t e = 1; e <= max_exponent; ++e) powers_[e] = f.mul(powers_[e - 1], f.reduce(t));
}

}  // namespace diplab
