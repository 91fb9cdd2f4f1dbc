#include <random>
#include <set>

#include "doctest.h"
#include "mwl/errors.hpp"
#include "mwl/laurent.hpp"
#include "support/oracles.hpp"

using namespace mwl;

namespace {

LaurentPoly from_mask(unsigned long mask, long shift = 0) {
  LaurentPoly x(2);
  for (int i = 0; i < 64; ++i)
    if (mask >> i & 1) x = x + LaurentPoly::monomial(2, 1, i + shift);
  return x;
}

unsigned long to_mask(const LaurentPoly& x) {
  unsigned long m = 0;
  if (x.is_zero()) return 0;
  for (long e = x.low(); e <= x.high(); ++e)
    if (x.coeff(e)) m |= 1UL << (e - x.low());
  return m;
}

}  // namespace

TEST_CASE("arithmetic over F_3") {
  const LaurentPoly a = LaurentPoly::monomial(3, 1, -1) + LaurentPoly::monomial(3, 2, 1);
  const LaurentPoly b = LaurentPoly::monomial(3, 1, 1);
  CHECK((a * b).low() == 0);
  CHECK((a * b).coeff(2) == 2);
  CHECK((a + a + a).is_zero());
  CHECK(a.shifted(3).low() == 2);
  CHECK(a.span() == 2);
  CHECK(inverse_mod(2, 3) == 2);
  CHECK(inverse_mod(3, 7) == 5);
}

TEST_CASE("normalization strips the unit") {
  const LaurentPoly a = LaurentPoly::monomial(5, 3, -2) + LaurentPoly::monomial(5, 1, 0);
  LaurentPoly unit(5);
  const LaurentPoly n = a.normalized(&unit);
  CHECK(n.low() == 0);
  CHECK(n.coeff(n.high()) == 1);
  CHECK(n == unit * a);
}

TEST_CASE("division with remainder below the divisor span") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const unsigned long bm = (rng() & 0x3F) | 1 | 0x40;  // degree 6, constant term 1
    const LaurentPoly b = from_mask(bm);
    const LaurentPoly a = from_mask(rng() & 0xFFFF, static_cast<long>(rng() % 11) - 5);
    const auto [q, r] = laurent_divmod(a, b);
    CHECK(q * b + r == a);
    if (!r.is_zero()) {
      CHECK(r.low() >= 0);
      CHECK(r.high() < b.span());
    }
  }
}

TEST_CASE("1 + t^2 lies in the ideal of 1 + t over F_2") {
  const HermiteReducer h(2, 1, {{from_mask(0b11)}});
  CHECK(h.contains({from_mask(0b101)}));
  CHECK(h.reduce({from_mask(0b101)})[0].is_zero());
  CHECK(h.reduce({LaurentPoly(2)})[0].is_zero());
  CHECK(*h.quotient_cardinality() == 2);
}

TEST_CASE("ideal of 1 + t + t^3 has exactly 8 residues") {
  const HermiteReducer h(2, 1, {{from_mask(0b1011)}});
  std::set<unsigned long> forms;
  for (unsigned long x = 0; x < 256; ++x) {
    const LaurentPoly r = h.reduce({from_mask(x)})[0];
    forms.insert(r.is_zero() ? 0 : to_mask(r) << r.low());
  }
  CHECK(forms.size() == 8);
  CHECK(*h.quotient_cardinality() == 8);
}

TEST_CASE("membership agrees with polynomial division over F_2") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 400; ++i) {
    const unsigned long f = (rng() & 0x1F) | 1;
    if (f == 1) continue;
    const HermiteReducer h(2, 1, {{from_mask(f, static_cast<long>(rng() % 5) - 2)}});
    const unsigned long x = rng() & 0xFFF;
    CHECK(h.contains({from_mask(x, static_cast<long>(rng() % 7) - 3)}) == oracle::gf2_laurent_divides(f, x));
  }
}

TEST_CASE("normal forms identify exactly the cosets") {
  std::mt19937_64 rng(12);
  const HermiteReducer h(2, 2, {{from_mask(0b11), from_mask(0b1)}, {from_mask(0b101), LaurentPoly(2)}});
  for (int i = 0; i < 200; ++i) {
    const LaurentVector x{from_mask(rng() & 0xFF, -2), from_mask(rng() & 0xFF)};
    const LaurentVector y{from_mask(rng() & 0xFF), from_mask(rng() & 0xFF, 1)};
    const LaurentVector d{x[0] - y[0], x[1] - y[1]};
    CHECK((h.reduce(x) == h.reduce(y)) == h.contains(d));
    // translation by t maps cosets to cosets
    const LaurentVector tx{x[0].shifted(1), x[1].shifted(1)};
    const LaurentVector rx = h.reduce(x);
    CHECK(h.reduce(tx) == h.reduce({rx[0].shifted(1), rx[1].shifted(1)}));
  }
}

TEST_CASE("composite moduli are rejected") {
  CHECK_THROWS_AS(HermiteReducer(4, 1, {{LaurentPoly::monomial(4, 1, 0)}}), DomainError);
}
