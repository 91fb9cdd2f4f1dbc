#include <random>

#include "doctest.h"
#include "mwl/errors.hpp"
#include "mwl/orbit_count.hpp"

using namespace mwl;

namespace {

const FinAbGroup Z = FinAbGroup::free(1);

std::vector<GroupElem> interval(long lo, long hi) {
  std::vector<GroupElem> f;
  for (long i = lo; i < hi; ++i) f.push_back(Z.element({i}));
  return f;
}

GRSet random_set(const ShiftModule& m, std::mt19937_64& rng, long width) {
  std::vector<GRElement> v;
  const int size = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < size; ++i) {
    std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> terms;
    for (long pos = 0; pos < width; ++pos) {
      if (rng() % 3 == 0) continue;
      std::vector<Integer> c;
      for (const auto& mod : m.coeff().moduli())
        c.emplace_back(mod == 0 ? static_cast<long>(rng() % 5) - 2 : static_cast<long>(rng() % mod.get_ui()));
      terms.push_back({{pos - 1}, c});
    }
    v.push_back(m.element(terms));
  }
  return GRSet(std::move(v));
}

// k-torsion check on a plain carrier, coordinate by coordinate.
bool killed_by(const ShiftModule& m, const GRElement& x, long k) {
  return m.scale(k, x).is_zero();
}

}  // namespace

TEST_CASE("automaton counts match enumeration") {
  std::mt19937_64 rng(77);
  const std::vector<FinAbGroup> coeffs{FinAbGroup::cyclic(2), FinAbGroup::cyclic(3), FinAbGroup::cyclic(4),
                                       FinAbGroup({2, 3}), FinAbGroup({2, 2}), FinAbGroup::free(1)};
  for (int it = 0; it < 200; ++it) {
    const ShiftModule m(Z, coeffs[rng() % coeffs.size()]);
    const GRSet a = random_set(m, rng, 1 + static_cast<long>(rng() % 3));
    const long lo = static_cast<long>(rng() % 5) - 2;
    const auto f = interval(lo, lo + 1 + static_cast<long>(rng() % 4));
    const GRSet s = orbit_sum(m, a, f);
    CHECK(count_orbit_sum(m, a, f) == Integer(s.size()));
  }
}

TEST_CASE("torsion-filtered counts match enumeration") {
  std::mt19937_64 rng(78);
  const std::vector<FinAbGroup> coeffs{FinAbGroup::cyclic(4), FinAbGroup({2, 4}), FinAbGroup::cyclic(6),
                                       FinAbGroup::cyclic(9)};
  for (int it = 0; it < 150; ++it) {
    const ShiftModule m(Z, coeffs[rng() % coeffs.size()]);
    const GRSet a = random_set(m, rng, 2);
    const auto f = interval(0, 1 + static_cast<long>(rng() % 4));
    const long k = std::vector<long>{2, 3, 4}[rng() % 3];
    std::size_t expected = 0;
    for (const auto& x : orbit_sum(m, a, f)) expected += killed_by(m, x, k);
    CHECK(count_orbit_sum(m, a, f, Integer(k)) == Integer(expected));
  }
}

TEST_CASE("actions through Z and coefficient quotients are supported") {
  std::mt19937_64 rng(79);
  const FinAbGroup z2 = FinAbGroup::free(2);
  const ShiftModule acted(z2, FinAbGroup::cyclic(3), AbHom(z2, Z, IntMatrix{{1, 0}}));
  CHECK(orbit_count_applicable(acted));
  std::vector<GroupElem> f;
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 2; ++j) f.push_back(z2.element({i, j}));
  for (int it = 0; it < 40; ++it) {
    const GRSet a = random_set(acted, rng, 2);
    CHECK(count_orbit_sum(acted, a, f) == Integer(orbit_sum(acted, a, f).size()));
  }
  const ShiftModule z6(Z, FinAbGroup::cyclic(6));
  const CoeffQuotient q = coeff_quotient(z6, {z6.coeff().element({3})});
  CHECK(orbit_count_applicable(q.module));
  for (int it = 0; it < 40; ++it) {
    const GRSet a = random_set(q.module, rng, 2);
    const auto g = interval(0, 3);
    CHECK(count_orbit_sum(q.module, a, g) == Integer(orbit_sum(q.module, a, g).size()));
  }
}

TEST_CASE("counts far beyond the enumeration cap") {
  const ShiftModule z2(Z, FinAbGroup::cyclic(2));
  // A = {j(1+t) : 0 ≤ j < 16} in Z/16: (j_s) -> Σ j_s s⁻¹(1+t) is injective
  // (read the coefficients from the lowest position up), so the count is 16^n
  const ShiftModule z16(Z, FinAbGroup::cyclic(16));
  std::vector<GRElement> v;
  for (long j = 0; j < 16; ++j) v.push_back(z16.element({{{0}, {j}}, {{1}, {j}}}));
  const GRSet a(v);
  for (long n = 1; n <= 10; ++n) {
    Integer expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 16, static_cast<unsigned long>(n));
    CHECK(count_orbit_sum(z16, a, interval(0, n)) == expected);
  }
  // {0, δ} over Z/2: 2^n exactly
  const GRSet b{z2.zero(), z2.element({{{0}, {1}}})};
  Integer two40;
  mpz_ui_pow_ui(two40.get_mpz_t(), 2, 40);
  CHECK(count_orbit_sum(z2, b, interval(0, 40)) == two40);
}

TEST_CASE("unsupported modules are configuration errors") {
  const FinAbGroup z2 = FinAbGroup::free(2);
  const ShiftModule plane(z2, FinAbGroup::cyclic(2));
  CHECK_FALSE(orbit_count_applicable(plane));
  const GRSet a{plane.zero(), plane.element({{{0, 0}, {1}}})};
  CHECK_THROWS_AS(count_orbit_sum(plane, a, {z2.element({0, 0})}), ConfigError);

  const ShiftModule plain(Z, FinAbGroup::cyclic(2));
  const ShiftModule q(Z, FinAbGroup::cyclic(2), std::nullopt,
                      SubmodulePresentation::principal({plain.element({{{0}, {1}}, {{1}, {1}}})}));
  CHECK_FALSE(orbit_count_applicable(q));
}

TEST_CASE("state cap") {
  const ShiftModule z5(Z, FinAbGroup::cyclic(5));
  std::vector<GRElement> v;
  for (long j = 0; j < 5; ++j)
    for (long k = 0; k < 5; ++k) v.push_back(z5.element({{{0}, {j}}, {{1}, {k}}, {{2}, {(j * k) % 5}}}));
  CHECK_THROWS_AS(count_orbit_sum(z5, GRSet(v), interval(0, 6), std::nullopt, 4), CapacityError);
}
