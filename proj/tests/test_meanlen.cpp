#include <cstdlib>
#include <string>

#include "doctest.h"
#include "mwl/errors.hpp"
#include "mwl/meanlen.hpp"

using namespace mwl;

namespace {

const FinAbGroup Z = FinAbGroup::free(1);
using K = LengthValue::Kind;

ExactRatio log_ratio(long count, long den) { return ExactRatio::of(LengthValue::log_of(count), den); }

Integer ipow(unsigned long b, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

GRSet zero_delta(const ShiftModule& m) { return GRSet{m.zero(), m.element({{{0}, {1}}})}; }

ShiftModule principal_quotient() {
  const ShiftModule plain(Z, FinAbGroup::cyclic(2));
  return ShiftModule(Z, FinAbGroup::cyclic(2), std::nullopt,
                     SubmodulePresentation::principal({plain.element({{{0}, {1}}, {{1}, {1}}, {{3}, {1}}})}));
}

}  // namespace

TEST_CASE("exact ratios are normalized") {
  const ExactRatio r = log_ratio(16, 4);
  CHECK(r.count() == 2);
  CHECK(r.den() == 1);
  CHECK(r == log_ratio(2, 1));
  const ExactRatio s = log_ratio(64, 4);
  CHECK(s.count() == 8);
  CHECK(s.den() == 2);
  CHECK(log_ratio(12, 2).count() == 12);
  CHECK(log_ratio(9, 2) == log_ratio(3, 1));
  CHECK(log_ratio(1, 7).is_zero());
  CHECK(ExactRatio::of(LengthValue::rational(3), 6).value() == Rational(1, 2));
  CHECK(ExactRatio::of(LengthValue::infinity(), 3).is_infinite());
}

TEST_CASE("exact ratios compare and add") {
  CHECK(log_ratio(2, 1) < log_ratio(3, 1));
  CHECK(log_ratio(8, 3) == log_ratio(2, 1));
  CHECK(log_ratio(3, 2) < log_ratio(2, 1));  // 3 < 4
  CHECK(log_ratio(11, 10) > log_ratio(2, 10));
  // close values: log 1001 / 1000 against log 1000 / 1000 is decided exactly
  CHECK(log_ratio(1001, 1000) > log_ratio(1000, 1000));
  const ExactRatio sum = log_ratio(2, 2) + log_ratio(3, 3);
  CHECK(sum == log_ratio(72, 6));
  CHECK(log_ratio(2, 1) + ExactRatio::zero(K::LogOfCount) == log_ratio(2, 1));
  CHECK(log_ratio(5, 1) < ExactRatio::of(LengthValue::infinity(), 1));
  CHECK(ExactRatio::of(LengthValue::rational(1), 3) + ExactRatio::of(LengthValue::rational(1), 6) ==
        ExactRatio::of(LengthValue::rational(1), 2));
}

TEST_CASE("box Følner sets") {
  const FinAbGroup zt({0, 3});
  const FolnerSequence seq(zt, 5);
  CHECK(seq.box_size(4) == 12);
  CHECK(seq.box(4).size() == 12);
  CHECK(FolnerSequence(FinAbGroup::free(2), 3).box_size(3) == 9);
  CHECK(FolnerSequence::default_n_max(Z, 2) == 12);
  CHECK(FolnerSequence::default_n_max(Z, 16) == 4);
  CHECK(FolnerSequence::default_n_max(FinAbGroup::free(2), 2) == 4);
  CHECK(FolnerSequence::default_n_max(Z, 1) == 12);
}

TEST_CASE("invariance of boxes") {
  std::vector<GroupElem> f;
  for (long i = 0; i < 10; ++i) f.push_back(Z.element({i}));
  const std::vector<GroupElem> k{Z.element({0}), Z.element({1})};
  const auto r = is_invariant(Z, f, k, Rational(1, 10));
  CHECK(r.count == 9);
  CHECK(r.invariant);
  CHECK_FALSE(is_invariant(Z, f, k, Rational(1, 20)).invariant);
  CHECK(is_invariant(Z, f, {Z.element({0})}, Rational(1, 20)).count == 10);
  CHECK_THROWS_AS(is_invariant(Z, f, k, Rational(0)), DomainError);
  CHECK_THROWS_AS(is_invariant(Z, f, k, Rational(3, 2)), DomainError);
}

TEST_CASE("full shift ratios are constant") {
  for (long p : {2, 3, 5}) {
    const ShiftModule m(Z, FinAbGroup::cyclic(p));
    const auto est = ratio_sequence(m, zero_delta(m), WeakLengthSpec::log_card(), FolnerSequence(Z, 8));
    REQUIRE(est.rows.size() == 8);
    for (const auto& row : est.rows) {
      CHECK(row.value == LengthValue::log_of(ipow(2, row.n)));
      CHECK(row.ratio == log_ratio(2, 1));
    }
    CHECK(est.constant_exact);
    CHECK(est.zero_in_a);
    CHECK(est.limit == MeanEstimate::Limit::ConstantRatios);
    CHECK(*est.limit_value == log_ratio(2, 1));
    CHECK(est.fekete.applicable);
    CHECK_FALSE(est.fekete.violation);
  }
  const ShiftModule m3(Z, FinAbGroup::cyclic(3));
  const GRSet all{m3.zero(), m3.element({{{0}, {1}}}), m3.element({{{0}, {2}}})};
  const auto est = ratio_sequence(m3, all, WeakLengthSpec::log_card(), FolnerSequence(Z, 6));
  CHECK(*est.limit_value == log_ratio(3, 1));
  CHECK(est.symmetric_a);
}

TEST_CASE("shift through a quotient of the acting group") {
  // Γ = Z² acting on Z through the first coordinate; every position of
  // A^[F_n] is a sum of n values in {0, 1}
  const FinAbGroup z2 = FinAbGroup::free(2);
  const ShiftModule m(z2, FinAbGroup::free(1), AbHom(z2, Z, IntMatrix{{1, 0}}));
  const auto est = ratio_sequence(m, zero_delta(m), WeakLengthSpec::log_card(), FolnerSequence(z2, 6));
  REQUIRE(est.rows.size() == 6);
  for (const auto& row : est.rows) {
    CHECK(row.value == LengthValue::log_of(ipow(row.n + 1, row.n)));
    CHECK(row.ratio == log_ratio(row.n + 1, row.n));
  }
  for (std::size_t i = 1; i < est.rows.size(); ++i) CHECK(est.rows[i].ratio < est.rows[i - 1].ratio);
  CHECK(est.limit == MeanEstimate::Limit::None);
  CHECK_FALSE(est.fekete.applicable);
}

TEST_CASE("finite modules have limit zero") {
  const ShiftModule q = principal_quotient();
  REQUIRE(*q.cardinality() == 8);
  const auto est = ratio_sequence(q, zero_delta(q), WeakLengthSpec::log_card(), FolnerSequence(Z, 10));
  for (const auto& row : est.rows) CHECK(row.value <= LengthValue::log_of(8));
  CHECK(est.limit == MeanEstimate::Limit::FiniteModule);
  CHECK(est.limit_value->is_zero());
  CHECK(*est.module_cardinality == 8);
}

TEST_CASE("ratio tables stop at the enumeration cap") {
  const FinAbGroup z2 = FinAbGroup::free(2);
  const ShiftModule m(z2, FinAbGroup::cyclic(2));
  const GRSet a{m.zero(), m.element({{{0, 0}, {1}}})};
  const auto est = ratio_sequence(m, a, WeakLengthSpec::log_card(), FolnerSequence(z2, 5));
  CHECK(est.truncated);
  REQUIRE(est.rows.size() == 4);
  CHECK(est.rows[3].value == LengthValue::log_of(ipow(2, 16)));
  CHECK_FALSE(est.truncation_reason.empty());
}

TEST_CASE("length-induced ratios and the doubling check") {
  const ShiftModule m(Z, FinAbGroup::free(1));
  const GRSet a{m.element({{{0}, {-1}}}), m.zero(), m.element({{{0}, {1}}})};
  // <A^[F_n]> = Z^n: rank n, infinite composition length
  const auto rank = ratio_sequence(m, a, WeakLengthSpec::rank(), FolnerSequence(Z, 6));
  CHECK(rank.strongly_subadditive);
  CHECK(rank.doubling.applicable);
  CHECK_FALSE(rank.doubling.violation);
  for (const auto& row : rank.rows) CHECK(row.ratio == ExactRatio::of(LengthValue::rational(1), 1));
  const auto nu = ratio_sequence(m, a, WeakLengthSpec::nu(), FolnerSequence(Z, 3));
  for (const auto& row : nu.rows) CHECK(row.ratio.is_infinite());

  const ShiftModule m4(Z, FinAbGroup::cyclic(4));
  const GRSet b{m4.element({{{0}, {3}}}), m4.zero(), m4.element({{{0}, {1}}})};
  const auto nu4 = ratio_sequence(m4, b, WeakLengthSpec::nu(), FolnerSequence(Z, 6));
  CHECK(nu4.strongly_subadditive);
  CHECK_FALSE(nu4.doubling.violation);
  for (const auto& row : nu4.rows) CHECK(row.ratio == ExactRatio::of(LengthValue::rational(2), 1));
  const auto card = ratio_sequence(m, a, WeakLengthSpec::log_card(), FolnerSequence(Z, 5));
  CHECK_FALSE(card.strongly_subadditive);
  for (const auto& row : card.rows) CHECK(row.value == LengthValue::log_of(ipow(3, row.n)));
}

TEST_CASE("orbit values and their routes") {
  const ShiftModule m(Z, FinAbGroup::cyclic(4));
  const GRSet a{m.zero(), m.element({{{0}, {1}}}), m.element({{{0}, {2}}})};
  std::vector<GroupElem> f;
  for (long i = 0; i < 3; ++i) f.push_back(Z.element({i}));
  std::string method;
  CHECK(orbit_value(m, a, WeakLengthSpec::log_card(), f, &method) == LengthValue::log_of(27));
  CHECK(method == "automaton");
  // elements of {0,1,2}^3 killed by 2: coordinates in {0,2}
  CHECK(orbit_value(m, a, WeakLengthSpec::tors_log(2), f) == LengthValue::log_of(8));
  CHECK(orbit_value(m, a, WeakLengthSpec::nu(), f, &method) == LengthValue::rational(6));
  CHECK(method == "generators");

  const ShiftModule q = principal_quotient();
  CHECK_THROWS_AS(orbit_value(q, zero_delta(q), WeakLengthSpec::nu(), f), ConfigError);
  CHECK(orbit_value(q, zero_delta(q), WeakLengthSpec::log_card(), f, &method) == LengthValue::log_of(8));
  CHECK(method == "enumeration");
}

TEST_CASE("product witnesses add") {
  const ShiftModule m2(Z, FinAbGroup::cyclic(2)), m3(Z, FinAbGroup::cyclic(3));
  const ShiftModule m6(Z, FinAbGroup({2, 3}));
  const GRSet a{m2.zero(), m2.element({{{0}, {1}}})};
  const GRSet b{m3.zero(), m3.element({{{0}, {1}}, {{1}, {2}}})};
  const GRSet ab{m6.zero(), m6.element({{{0}, {1, 0}}}), m6.element({{{0}, {0, 1}}, {{1}, {0, 2}}}),
                 m6.element({{{0}, {1, 1}}, {{1}, {0, 2}}})};
  for (long n = 1; n <= 5; ++n) {
    std::vector<GroupElem> f;
    for (long i = 0; i < n; ++i) f.push_back(Z.element({i}));
    const auto spec = WeakLengthSpec::log_card();
    CHECK(orbit_value(m6, ab, spec, f) == orbit_value(m2, a, spec, f) + orbit_value(m3, b, spec, f));
  }
}

TEST_CASE("mean lower bounds") {
  const ShiftModule m(Z, FinAbGroup::cyclic(2));
  const auto spec = WeakLengthSpec::log_card();
  const FolnerSequence seq(Z, 6);
  const auto one = mean_lower_bound(m, {zero_delta(m)}, spec, seq);
  CHECK(one.certified);
  CHECK(one.lower_bound == log_ratio(2, 1));

  const auto none = mean_lower_bound(m, {}, spec, seq);
  CHECK_FALSE(none.certified);
  CHECK(none.lower_bound.is_zero());

  const ShiftModule m22(Z, FinAbGroup({2, 2}));
  const GRSet small{m22.zero(), m22.element({{{0}, {1, 0}}})};
  const GRSet all{m22.zero(), m22.element({{{0}, {1, 0}}}), m22.element({{{0}, {0, 1}}}),
                  m22.element({{{0}, {1, 1}}})};
  const auto best = mean_lower_bound(m22, {small, all}, spec, seq);
  CHECK(best.lower_bound == log_ratio(4, 1));
  CHECK(best.lower_bound == log_ratio(2, 1) + log_ratio(2, 1));
  CHECK(*best.best_witness == 1);

  const ShiftModule trivial(Z, FinAbGroup(std::vector<Integer>{}));
  const auto t = mean_lower_bound(trivial, {GRSet{trivial.zero()}}, spec, seq);
  CHECK(t.lower_bound.is_zero());
}

TEST_CASE("addition over a coefficient subgroup") {
  const ShiftModule m2(Z, FinAbGroup::cyclic(4));
  const auto n1 = SubmodulePresentation::coefficient_subgroup({m2.coeff().element({2})});
  const GRSet w1{m2.zero(), m2.element({{{0}, {2}}})};
  const GRSet w2{m2.zero(), m2.element({{{0}, {1}}}), m2.element({{{0}, {2}}}), m2.element({{{0}, {3}}})};
  const GRSet wq{m2.zero(), m2.element({{{0}, {1}}})};
  for (unsigned n_max : {3u, 5u, 7u}) {
    const auto r = addition_report(m2, n1, {w1}, {w2}, {wq}, WeakLengthSpec::log_card(), n_max);
    CHECK(r.verdict == AdditionReport::Verdict::ExactEqual);
    CHECK(r.m1.lower_bound == log_ratio(2, 1));
    CHECK(r.m2.lower_bound == log_ratio(4, 1));
    CHECK(r.quotient.lower_bound == log_ratio(2, 1));
    CHECK(r.easy_direction_holds);
    CHECK_FALSE(r.easy_direction.empty());
  }
  // a witness outside N1
  CHECK_THROWS_AS(addition_report(m2, n1, {wq}, {w2}, {wq}, WeakLengthSpec::log_card(), 3), DomainError);
}

TEST_CASE("addition with a trivial submodule") {
  const ShiftModule m2(Z, FinAbGroup::cyclic(3));
  const auto n1 = SubmodulePresentation::coefficient_subgroup({});
  const GRSet w{m2.zero(), m2.element({{{0}, {1}}}), m2.element({{{0}, {2}}})};
  const auto r = addition_report(m2, n1, {GRSet{m2.zero()}}, {w}, {w}, WeakLengthSpec::log_card(), 4);
  CHECK(r.verdict == AdditionReport::Verdict::ExactEqual);
  CHECK(r.m1.lower_bound.is_zero());
  CHECK(r.quotient.lower_bound == log_ratio(3, 1));
}

TEST_CASE("addition over a principal submodule") {
  const ShiftModule m2(Z, FinAbGroup::cyclic(2));
  const GRElement f = m2.element({{{0}, {1}}, {{1}, {1}}, {{3}, {1}}});
  const auto n1 = SubmodulePresentation::principal({f});
  const GRSet w1{m2.zero(), f};
  const auto r = addition_report(m2, n1, {w1}, {zero_delta(m2)}, {zero_delta(m2)}, WeakLengthSpec::log_card());
  CHECK(*r.quotient_cardinality == 8);
  CHECK(r.quotient.lower_bound.is_zero());
  CHECK(r.m1.lower_bound == log_ratio(2, 1));
  CHECK(r.m2.lower_bound == log_ratio(2, 1));
  CHECK(r.verdict == AdditionReport::Verdict::ExactEqual);
  CHECK(r.easy_direction_holds);
}

TEST_CASE("estimates do not depend on the thread count") {
  const FinAbGroup z2 = FinAbGroup::free(2);
  const ShiftModule m(z2, FinAbGroup::free(1), AbHom(z2, Z, IntMatrix{{1, 0}}));
  const auto run = [&] {
    const auto est = ratio_sequence(m, zero_delta(m), WeakLengthSpec::log_card(), FolnerSequence(z2, 5));
    std::string s;
    for (const auto& row : est.rows) s += row.value.to_string() + ";" + row.ratio.to_string() + "\n";
    return s;
  };
  setenv("MWL_THREADS", "1", 1);
  const std::string one = run();
  setenv("MWL_THREADS", "4", 1);
  const std::string four = run();
  unsetenv("MWL_THREADS");
  CHECK(one == four);
}
