#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "diplab/canonical_family.hpp"
#include "diplab/errors.hpp"
#include "diplab/field.hpp"
#include "diplab/generators.hpp"
#include "diplab/random.hpp"

using namespace diplab;

namespace {

bool prime_by_trial_division(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("prime choice") {
    CHECK(choose_prime(1, PrimeMode::fixed).modulus() == Element{2305843009213693951ull});
    CHECK(choose_prime(10'000'000, PrimeMode::fixed).modulus() == kMersenne61);
    CHECK_THROWS_AS(choose_prime(10'000'001, PrimeMode::fixed), OutOfRange);
    CHECK(choose_prime(2, PrimeMode::paper).modulus() == 769);
    CHECK(choose_prime(1, PrimeMode::paper).modulus() == 3);
    CHECK_THROWS_AS(choose_prime(1001, PrimeMode::paper), OutOfRange);
    CHECK_THROWS_AS(choose_prime(0, PrimeMode::fixed), InvalidArgument);
  }

  TEST_CASE("wide primes are the smallest at or above 3 n^8") {
    for (std::size_t n : {3, 4, 5, 7}) {
      Element bound = 3;
      for (int i = 0; i < 8; ++i) bound *= n;
      const Element p = choose_prime(n, PrimeMode::paper).modulus();
      CHECK(p >= bound);
      CHECK(prime_by_trial_division(static_cast<std::uint64_t>(p)));
      for (Element c = bound; c < p; ++c) CHECK_FALSE(prime_by_trial_division(static_cast<std::uint64_t>(c)));
    }
    const Field big = choose_prime(1000, PrimeMode::paper);
    CHECK(big.element_bits() == 82);
    CHECK(big.pow(12345, big.modulus() - 1) == 1);
  }

  TEST_CASE("primality matches trial division below 20000") {
    for (std::uint64_t x = 0; x < 20000; ++x) REQUIRE(is_prime(x) == prime_by_trial_division(x));
    CHECK(is_prime(kMersenne61));
    CHECK_FALSE(is_prime(Element{3215031751ull}));  // strong pseudoprime to bases 2, 3, 5, 7
  }

  TEST_CASE("arithmetic against 128-bit products") {
    const Field f(kMersenne61);
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
      const Element x = rng.below(kMersenne61), y = rng.below(kMersenne61);
      REQUIRE(f.mul(x, y) == x * y % kMersenne61);
      REQUIRE(f.add(x, y) == (x + y) % kMersenne61);
      REQUIRE(f.add(f.sub(x, y), y) == x);
      REQUIRE(f.add(x, f.neg(x)) == 0);
    }
    CHECK(f.element_bits() == 61);
    CHECK(Field(101).element_bits() == 7);
    CHECK_THROWS_AS(Field(1), InvalidArgument);
  }

  TEST_CASE("wide moduli keep the ring laws") {
    const Field f = choose_prime(900, PrimeMode::paper);
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
      const Element x = rng.below(f.modulus()), y = rng.below(f.modulus()),
                    z = rng.below(f.modulus());
      REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
      REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
      if (x != 0) REQUIRE(f.mul(x, f.pow(x, f.modulus() - 2)) == 1);
    }
  }

  TEST_CASE("monomials and neighbourhood sums") {
    const Field f(101);
    CHECK(phi_eval(5, 2, f) == 32);
    CHECK(phi_eval(1, 77, f) == 77);
    CHECK(phi_eval(100, 2, f) == 1);
    CHECK_THROWS_AS(phi_eval(0, 2, f), InvalidArgument);
    CHECK(neighborhood_eval({}, 2, f) == 0);
    const std::vector<Element> three{1, 2, 3};
    CHECK(neighborhood_eval(three, 2, f) == 14);
    const std::vector<Element> one{3};
    CHECK(neighborhood_eval(one, 2, f) == 8);
    const PowerTable table(2, 10, f);
    CHECK(table[0] == 1);
    CHECK(table[7] == 27);
    CHECK(table.max_exponent() == 10);
  }

  TEST_CASE("twin merge") {
    const Field f(101);
    const auto false_twins = twin_merge({2, 8}, {4, 8}, f);
    CHECK_FALSE(false_twins.delta);
    CHECK(false_twins.entry == VectorEntry{6, 8});
    const auto true_twins = twin_merge({2, 12}, {4, 10}, f);
    CHECK(true_twins.delta);
    CHECK(true_twins.entry == VectorEntry{6, 8});
    const auto isolated = twin_merge({5, 0}, {7, 0}, f);
    CHECK_FALSE(isolated.delta);
    CHECK(isolated.entry == VectorEntry{12, 0});
    CHECK_THROWS_AS(twin_merge({3, 1}, {3, 2}, f), FingerprintCollision);
  }

  TEST_CASE("pending delete") {
    const Field f(101);
    CHECK(pending_delete({2, 12}, 4, f) == VectorEntry{2, 8});
    CHECK(pending_delete({9, 40}, 0, f) == VectorEntry{9, 40});
    CHECK(pending_delete({3, 2}, 5, f) == VectorEntry{3, 98});
  }

  TEST_CASE("true-twin merge matches the merged polynomials") {
    // K3 with exponents 1, 2, 3: merging node 1 into node 2 leaves phi = x + x^2, q = x^3
    const Field f(kMersenne61);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const Element t = rng.below(kMersenne61);
      const Element t1 = t, t2 = f.mul(t, t), t3 = f.mul(t2, t);
      if (t1 == t2) continue;
      const auto r = twin_merge({t2, f.add(t1, t3)}, {t1, f.add(t2, t3)}, f);
      CHECK(r.delta);
      CHECK(f.add(r.entry.a, r.entry.b) == f.add(f.add(t1, t2), t3));
      CHECK(r.entry == VectorEntry{f.add(t1, t2), t3});
    }
  }
}

TEST_SUITE("canonical-family") {
  TEST_CASE("K2 and K1") {
    const Field f(101);
    const Graph k2 = graphs::complete(2);
    const auto seq = *compute_pruning_sequence(k2);
    CHECK(canonical_family_root_count(k2, seq, 1, f));
    CHECK_FALSE(canonical_family_root_count(k2, seq, 2, f));
    CHECK(canonical_family_root_count(k2, seq, 0, f));
    const Graph k1(1);
    CHECK_FALSE(canonical_family_root_count(k1, *compute_pruning_sequence(k1), 5, f));
  }

  TEST_CASE("bad t are rare and below the bound") {
    // modulus near 10^6; bound 3 n^4 / p per draw
    const Field f(1'000'003);
    Rng rng(21);
    std::size_t bad = 0, total = 0;
    double bound_sum = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const std::size_t n = 2 + seed % 7;
      const auto inst = gen_random_dh(n, seed);
      for (int k = 0; k < 50; ++k) {
        const Element t = rng.below(f.modulus());
        bad += canonical_family_root_count(inst.config.graph(), inst.sequence, t, f);
        ++total;
        bound_sum += 3.0 * static_cast<double>(n * n * n * n) / 1'000'003.0;
      }
    }
    CHECK(static_cast<double>(bad) <= bound_sum);
  }

  TEST_CASE("fold equals symbolic evaluation at good t") {
    const Field f(kMersenne61);
    Rng rng(8);
    std::size_t compared = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto inst = gen_random_dh(1 + seed % 30, seed);
      const Graph& g = inst.config.graph();
      const auto e = positions_as_exponents(inst.sequence);
      const Element t = rng.below(kMersenne61);
      if (canonical_family_root_count(g, inst.sequence, e, t, f)) continue;
      const auto sym = symbolic_vectors(g, inst.sequence, e, t, f);
      const auto fold = fold_vectors(g, inst.sequence, e, t, f);
      REQUIRE(sym == fold);
      CHECK(sym.size() == g.size());
      ++compared;
    }
    CHECK(compared > 290);
  }

  TEST_CASE("a colliding t surfaces from the fold") {
    // t = 1 makes every monomial equal, so the first twin merge collides
    const Field f(101);
    const Graph k3 = graphs::complete(3);
    const auto seq = *compute_pruning_sequence(k3);
    const auto e = positions_as_exponents(seq);
    CHECK(canonical_family_root_count(k3, seq, e, 1, f));
    CHECK_THROWS_AS(fold_vectors(k3, seq, e, 1, f), FingerprintCollision);
    const std::vector<Element> zero{0, 1, 2};
    CHECK_THROWS_AS(fold_vectors(k3, seq, zero, 2, f), InvalidArgument);
  }

  TEST_CASE("referee order follows key pairs") {
    // K3 keyed 1, 2, 3: remove 1 into 2, then 2 into 3
    const Graph k3 = graphs::complete(3);
    const std::vector<Element> keys{1, 2, 3};
    const auto seq = canonical_order(k3, keys);
    REQUIRE(seq.has_value());
    const std::vector<PruningStep> expected{{0, PruneRole::true_twin, 1},
                                            {1, PruneRole::true_twin, 2}};
    CHECK(seq->steps() == expected);
    const std::vector<Element> reversed{3, 2, 1};
    CHECK(canonical_order(k3, reversed)->steps().front() == PruningStep{2, PruneRole::true_twin, 1});
    const std::vector<Element> four{1, 2, 3, 4};
    CHECK_FALSE(canonical_order(graphs::path(4), four).has_value());
    const std::vector<Element> dup{1, 1, 2};
    CHECK_THROWS_AS(canonical_order(k3, dup), InvalidArgument);
  }
}
