#include "doctest.h"
#include "mwl/bivariant.hpp"
#include "mwl/errors.hpp"
#include "support/oracles.hpp"

using namespace mwl;

TEST_CASE("cover of an interval by an arithmetic progression") {
  const FinAbGroup z = FinAbGroup::free(1);
  const AbSet a{z.element({0}), z.element({1}), z.element({2}), z.element({3})};
  const AbSet b{z.element({-2}), z.element({0}), z.element({2})};
  const CoverResult r = cover_bivariant(z, a, b);
  CHECK(r.value == LengthValue::log_of(2));
  CHECK(r.cover == AbSet{z.element({0}), z.element({1})});
}

TEST_CASE("cover by {0} is the set itself and a subgroup covers in one step") {
  const FinAbGroup z6 = FinAbGroup::cyclic(6);
  const AbSet a{z6.element({1}), z6.element({4}), z6.element({5})};
  CHECK(cover_bivariant(z6, a, AbSet{z6.zero()}).value == LengthValue::log_of(3));
  CHECK(cover_bivariant(z6, a, AbSet(enumerate_elements(z6))).value == LengthValue::log_of(1));
}

TEST_CASE("minimum cover agrees with brute force") {
  SampleOptions opt = bivariant_sample_options();
  SampleGenerator gen(Rng(21), opt);
  for (int i = 0; i < 150; ++i) {
    const FinAbGroup g = gen.finite_group();
    const AbSet a = gen.subset(g, 6);
    const AbSet b = gen.subset(g, 4);
    const CoverResult r = cover_bivariant(g, a, b);
    const std::size_t k = oracle::min_cover_size(g, a.elements(), b.elements());
    CHECK(r.value == LengthValue::log_of(Integer(static_cast<unsigned long>(k))));
    CHECK(r.cover.size() == k);
    // the reported cover really covers
    const AbSet covered = set_sum(g, r.cover, b);
    CHECK(a.subset_of(covered));
  }
}

TEST_CASE("cover search refuses oversized sets") {
  const FinAbGroup z = FinAbGroup::free(1);
  std::vector<AbElement> big;
  for (long i = 0; i < 25; ++i) big.push_back(z.element({3 * i}));
  CHECK_THROWS_AS(cover_bivariant(z, AbSet(big), AbSet{z.zero()}), CapacityError);
}

TEST_CASE("quotient bivariants on Z^2") {
  const FinAbGroup z2 = FinAbGroup::free(2);
  const AbSet a{z2.element({1, 0}), z2.element({1, 1})};
  // Z²/<(1,0)> ≅ Z separates the two points, Z²/<(0,1)> merges them
  CHECK(quotient_log_card(z2, a, AbSet{z2.element({1, 0})}) == LengthValue::log_of(2));
  CHECK(quotient_log_card(z2, a, AbSet{z2.element({0, 1})}) == LengthValue::log_of(1));
  CHECK(quotient_bivariant(WeakLengthSpec::rank(), z2, a, AbSet{z2.element({1, 0})}) == LengthValue::rational(1));
  CHECK(quotient_bivariant(WeakLengthSpec::rank(), z2, a, AbSet{z2.element({0, 1})}) == LengthValue::rational(1));
  CHECK(cover_bivariant(z2, a, AbSet{z2.element({0, 1})}).value == LengthValue::log_of(2));
}

TEST_CASE("quotient_length only accepts length-induced bases") {
  CHECK_NOTHROW(BivariantSpec::quotient_length(WeakLengthSpec::nu()));
  CHECK_THROWS_AS(BivariantSpec::quotient_length(WeakLengthSpec::log_card()), DomainError);
  CHECK_THROWS_AS(BivariantSpec::quotient_length(WeakLengthSpec::tors_log(2)), DomainError);
}

TEST_CASE("kernel witness for the cover bivariant recovers log|phi(A)|") {
  const FinAbGroup z12 = FinAbGroup::cyclic(12);
  const AbHom phi(z12, FinAbGroup::cyclic(4), IntMatrix{{1}});
  const AbSet a{z12.element({0}), z12.element({1}), z12.element({5}), z12.element({7})};
  const AbSet b = kernel_witness(BivariantSpec::cover_log(), phi, a);
  for (const auto& x : b) CHECK(phi.apply(x).is_zero());
  // φ(A) = {0, 1, 3}
  CHECK(cover_bivariant(z12, a, b).value == LengthValue::log_of(3));
}

TEST_CASE("kernel witness for quotient lengths") {
  const FinAbGroup g = FinAbGroup({0, 6});
  const AbHom phi(g, FinAbGroup::cyclic(3), IntMatrix{{0, 1}});
  const AbSet a{g.element({1, 1}), g.element({0, 3})};
  for (const auto& base : {WeakLengthSpec::nu(), WeakLengthSpec::rank()}) {
    const BivariantSpec spec = BivariantSpec::quotient_length(base);
    const AbSet b = kernel_witness(spec, phi, a);
    for (const auto& x : b) CHECK(phi.apply(x).is_zero());
    CHECK(eval_bivariant(spec, g, a, b) == eval_weak_length(base, phi.target(), phi.apply(a)));
  }
}

TEST_CASE("cover_log passes the upgrading checks") {
  const UpgradingReport r = check_upgrading_proper(BivariantSpec::cover_log(), 7, 200);
  for (const auto& p : r.properties) CHECK_MESSAGE(!p.counterexample, p.name);
  CHECK(r.passed());
}

TEST_CASE("cover_log is not multiplicative on products") {
  // Z/3: A = Z/3, B = {0,1} needs 2 translates; Z/8: A' = {0,3,5},
  // B' = {0,1,6} needs 2; the product needs only 3
  const FinAbGroup z3 = FinAbGroup::cyclic(3), z8 = FinAbGroup::cyclic(8);
  const AbSet a = AbSet(enumerate_elements(z3)), b{z3.element({0}), z3.element({1})};
  const AbSet a2{z8.element({0}), z8.element({3}), z8.element({5})};
  const AbSet b2{z8.element({0}), z8.element({1}), z8.element({6})};
  CHECK(cover_bivariant(z3, a, b).value == LengthValue::log_of(2));
  CHECK(cover_bivariant(z8, a2, b2).value == LengthValue::log_of(2));
  const FinAbGroup p = direct_sum(z3, z8);
  const auto pa = set_product(a, a2), pb = set_product(b, b2);
  CHECK(cover_bivariant(p, pa, pb).value == LengthValue::log_of(3));
  CHECK(oracle::min_cover_size(p, pa.elements(), pb.elements()) == 3);
}

TEST_CASE("quotient upgrading of nu: product fails without 0, everything holds on F0") {
  const BivariantSpec spec = BivariantSpec::quotient_length(WeakLengthSpec::nu());
  const UpgradingReport plain = check_upgrading_proper(spec, 7, 200);
  CHECK(plain.property("product").counterexample.has_value());
  SampleOptions f0 = bivariant_sample_options();
  f0.adjoin_zero = true;
  const UpgradingReport r = check_upgrading_proper(spec, 7, 200, f0);
  for (const auto& p : r.properties) CHECK_MESSAGE(!p.counterexample, p.name);
}
