#include <map>

#include "doctest.h"
#include "mwl/errors.hpp"
#include "mwl/sampling.hpp"
#include "support/oracles.hpp"

using namespace mwl;

namespace {

// Reference xorshift64* seeded by one splitmix64 step, written out from the
// published constants.
struct ReferenceRng {
  std::uint64_t s;
  explicit ReferenceRng(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    s = z ^ (z >> 31);
  }
  std::uint64_t next() {
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return s * 0x2545F4914F6CDD1DULL;
  }
};

}  // namespace

TEST_CASE("generator matches the reference xorshift64*") {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xDEADBEEFULL}) {
    Rng r(seed);
    ReferenceRng ref(seed);
    for (int i = 0; i < 16; ++i) CHECK(r.next() == ref.next());
  }
}

TEST_CASE("bounded draws stay in range and reach every value") {
  Rng r(5);
  std::map<std::uint64_t, int> hits;
  for (int i = 0; i < 7000; ++i) {
    const auto x = r.below(7);
    REQUIRE(x < 7);
    ++hits[x];
  }
  CHECK(hits.size() == 7);
  for (const auto& [v, n] : hits) CHECK(n > 800);
  for (int i = 0; i < 200; ++i) {
    const long u = r.uniform(-3, 3);
    CHECK(u >= -3);
    CHECK(u <= 3);
  }
  CHECK_THROWS_AS(r.below(0), DomainError);
}

TEST_CASE("split streams are deterministic and distinct") {
  const Rng base(9);
  Rng a = base.split(3), b = base.split(3), c = base.split(4);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
}

TEST_CASE("sampled groups respect the bounds") {
  SampleOptions opt;
  opt.max_order = 36;
  opt.max_free_rank = 2;
  SampleGenerator gen(Rng(11), opt);
  for (int i = 0; i < 300; ++i) {
    const FinAbGroup g = gen.group();
    CHECK(g.free_rank() <= 2);
    Integer torsion = 1;
    for (const auto& f : g.invariant_factors()) torsion *= f;
    CHECK(torsion <= 36);
    const AbSet a = gen.subset(g);
    CHECK_FALSE(a.empty());
    CHECK(a.size() <= opt.max_set_size);
    for (const auto& x : a) CHECK(g.contains(x));
  }
}

TEST_CASE("adjoin_zero puts 0 in every set") {
  SampleOptions opt;
  opt.adjoin_zero = true;
  SampleGenerator gen(Rng(2), opt);
  for (int i = 0; i < 100; ++i) {
    const FinAbGroup g = gen.group();
    CHECK(gen.subset(g).contains(g.zero()));
  }
}

TEST_CASE("sampled homomorphisms are additive") {
  SampleGenerator gen(Rng(4), SampleOptions{});
  for (int i = 0; i < 150; ++i) {
    const FinAbGroup g = gen.group();
    const FinAbGroup h = gen.group();
    const AbHom phi = gen.hom(g, h);
    for (int k = 0; k < 5; ++k) {
      const AbElement x = gen.element(g), y = gen.element(g);
      CHECK(phi.apply(g.add(x, y)) == h.add(phi.apply(x), phi.apply(y)));
    }
  }
}

TEST_CASE("sampled isomorphisms are bijective onto an isomorphic group") {
  SampleOptions opt;
  opt.max_free_rank = 0;
  opt.max_order = 48;
  SampleGenerator gen(Rng(6), opt);
  for (int i = 0; i < 80; ++i) {
    const FinAbGroup g = gen.finite_group();
    const AbHom psi = gen.isomorphism(g);
    CHECK(psi.target().isomorphic_to(g));
    std::set<AbElement> image;
    for (const auto& x : enumerate_elements(g)) image.insert(psi.apply(x));
    CHECK(image.size() == g.cardinality()->get_ui());
  }
}
