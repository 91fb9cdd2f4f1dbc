#pragma once

// Seeded random instances for the axiom checkers and property tests.
//
// Generator: xorshift64* (Vigna), state seeded by one splitmix64 step of the
// user seed.  Bounded draws use rejection sampling so that streams are
// identical on every platform and standard library.

#include <cstdint>

#include "mwl/finabelian.hpp"

namespace mwl {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool coin() { return (next() >> 63) != 0; }

  /// Independent stream derived from this generator's seed and an index;
  /// used to give each sample its own generator so parallel evaluation does
  /// not change the draws.
  Rng split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

struct SampleOptions {
  /// Bound on the order of the torsion part.
  long max_order = 64;
  std::size_t max_free_rank = 1;
  std::size_t max_torsion_coords = 3;
  std::size_t max_set_size = 8;
  /// Free coordinates of sampled elements lie in [-free_range, free_range].
  long free_range = 3;
  /// Adjoin 0 to every sampled set (the F⁰ convention).
  bool adjoin_zero = false;
};

class SampleGenerator {
 public:
  SampleGenerator(Rng rng, SampleOptions options) : rng_(rng), opt_(options) {}

  const SampleOptions& options() const { return opt_; }
  Rng& rng() { return rng_; }

  FinAbGroup group();
  FinAbGroup finite_group();
  AbElement element(const FinAbGroup& g);
  /// Nonempty subset with at most max_set_size elements (plus 0 when
  /// adjoin_zero is set).
  AbSet subset(const FinAbGroup& g);
  AbSet subset(const FinAbGroup& g, std::size_t max_size);
  /// Random homomorphism; each matrix entry is drawn among the values
  /// allowed by the relations of source and target.
  AbHom hom(const FinAbGroup& source, const FinAbGroup& target);
  /// Random automorphism composed with the canonical isomorphism onto the
  /// Smith presentation, so the target presentation generally differs.
  AbHom isomorphism(const FinAbGroup& g);

 private:
  Rng rng_;
  SampleOptions opt_;
};

}  // namespace mwl
