#pragma once

#include <cstdint>
#include <random>

#include "diplab/types.hpp"

namespace diplab {

// Library-wide random source; bounded draws are done by hand, not with std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  Element below(Element bound);

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin(double probability) { return unit() < probability; }

  template <typename Range>
  void shuffle(Range& r) {
    const auto n = static_cast<std::uint64_t>(r.size());
    for (std::uint64_t i = n; i > 1; --i) {
      std::swap(r[i - 1], r[below(i)]);
    }
  }

  static std::uint64_t mix_seed(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed for a (seed, a, b) triple.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace diplab
