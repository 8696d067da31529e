#include "diplab/random.hpp"

namespace diplab {

std::uint64_t Rng::mix_seed(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

Element Rng::below(Element bound) {
  if (bound <= UINT64_MAX) return below(static_cast<std::uint64_t>(bound));
  const Element max = ~Element{0};
  const Element limit = bound * (max / bound);
  Element x;
  do {
    x = (static_cast<Element>(next()) << 64) | next();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = Rng::mix_seed(seed);
  h = Rng::mix_seed(h ^ (a + 0x632be59bd9b4e019ULL));
  h = Rng::mix_seed(h ^ (b + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace diplab
