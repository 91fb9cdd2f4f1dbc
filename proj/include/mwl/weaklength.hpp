#pragma once

// Built-in weak length functions on finite subsets of abelian groups and the
// exact value type they take.

#include <compare>
#include <string>

#include "mwl/finabelian.hpp"

namespace mwl {

/// Exact value in R ∪ {+∞}.  A LogOfCount(n) stands for log n, so sums of
/// logarithms are decided by integer multiplication.
class LengthValue {
 public:
  enum class Kind { LogOfCount, Rational, Infinity };

  static LengthValue log_of(const Integer& count);
  static LengthValue rational(const Rational& q);
  static LengthValue infinity() { return LengthValue(Kind::Infinity, 0, 0); }
  /// The zero of the given kind.
  static LengthValue zero(Kind kind);

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }
  bool is_zero() const;
  const Integer& count() const { return count_; }
  const Rational& value() const { return value_; }

  std::string to_string() const;
  /// Floating approximation for display only.
  double approx() const;

  friend LengthValue operator+(const LengthValue& a, const LengthValue& b);
  friend bool operator==(const LengthValue& a, const LengthValue& b);
  /// Throws DomainError when finite values of different kinds meet.
  friend std::strong_ordering operator<=>(const LengthValue& a, const LengthValue& b);

 private:
  LengthValue(Kind k, Integer c, Rational v) : kind_(k), count_(std::move(c)), value_(std::move(v)) {}

  Kind kind_;
  Integer count_;
  Rational value_;
};

LengthValue value_add(const LengthValue& a, const LengthValue& b);
std::strong_ordering value_cmp(const LengthValue& a, const LengthValue& b);
/// Sum of n copies of x.
LengthValue value_times(const LengthValue& x, unsigned long n);

struct WeakLengthSpec {
  enum class Kind { LogCard, TorsLog, RankLen, NuLen, GenFn };

  Kind kind = Kind::LogCard;
  /// Torsion order for TorsLog.
  Integer k = 2;

  static WeakLengthSpec log_card() { return {Kind::LogCard, 2}; }
  static WeakLengthSpec tors_log(const Integer& k) { return {Kind::TorsLog, k}; }
  static WeakLengthSpec rank() { return {Kind::RankLen, 2}; }
  static WeakLengthSpec nu() { return {Kind::NuLen, 2}; }
  /// Composition length of a Z-module; over Z it coincides with nu.
  static WeakLengthSpec composition_length() { return nu(); }
  static WeakLengthSpec gen() { return {Kind::GenFn, 2}; }

  /// False only for GenFn, which fails the product property.
  bool is_weak_length() const { return kind != Kind::GenFn; }
  /// Induced from a length function L via A -> L(<A>).
  bool is_length_induced() const { return kind == Kind::RankLen || kind == Kind::NuLen; }
  LengthValue::Kind value_kind() const;
  std::string name() const;

  friend bool operator==(const WeakLengthSpec&, const WeakLengthSpec&) = default;
};

/// Length functions on finitely generated Z-modules.
LengthValue rank_length(const FinAbGroup& m);
LengthValue nu_length(const FinAbGroup& m);

LengthValue eval_weak_length(const WeakLengthSpec& spec, const FinAbGroup& g, const AbSet& a);

}  // namespace mwl
