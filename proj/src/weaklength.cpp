#include "mwl/weaklength.hpp"

#include <cmath>

#include "mwl/errors.hpp"

namespace mwl {

LengthValue LengthValue::log_of(const Integer& count) {
  if (count < 1) throw DomainError("log of a count below 1 is not a length value");
  return LengthValue(Kind::LogOfCount, count, 0);
}

LengthValue LengthValue::rational(const Rational& q) { return LengthValue(Kind::Rational, 0, q); }

LengthValue LengthValue::zero(Kind kind) {
  switch (kind) {
    case Kind::LogOfCount:
      return log_of(1);
    case Kind::Rational:
      return rational(0);
    case Kind::Infinity:
      break;
  }
  throw DomainError("infinity has no zero");
}

bool LengthValue::is_zero() const {
  return (kind_ == Kind::LogOfCount && count_ == 1) || (kind_ == Kind::Rational && value_ == 0);
}

std::string LengthValue::to_string() const {
  switch (kind_) {
    case Kind::LogOfCount:
      return "log " + count_.get_str();
    case Kind::Rational:
      return mwl::to_string(value_);
    case Kind::Infinity:
      return "inf";
  }
  return "";
}

double LengthValue::approx() const {
  switch (kind_) {
    case Kind::LogOfCount: {
      long exp = 0;
      const double mant = mpz_get_d_2exp(&exp, count_.get_mpz_t());
      return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
    }
    case Kind::Rational:
      return value_.get_d();
    case Kind::Infinity:
      return INFINITY;
  }
  return 0;
}

LengthValue operator+(const LengthValue& a, const LengthValue& b) {
  using K = LengthValue::Kind;
  if (a.kind_ == K::Infinity || b.kind_ == K::Infinity) return LengthValue::infinity();
  if (a.kind_ != b.kind_) throw DomainError("cannot add " + a.to_string() + " and " + b.to_string());
  if (a.kind_ == K::LogOfCount) return LengthValue::log_of(a.count_ * b.count_);
  return LengthValue::rational(a.value_ + b.value_);
}

bool operator==(const LengthValue& a, const LengthValue& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const LengthValue& a, const LengthValue& b) {
  using K = LengthValue::Kind;
  if (a.kind_ == K::Infinity || b.kind_ == K::Infinity) {
    return (a.kind_ == K::Infinity) <=> (b.kind_ == K::Infinity);
  }
  if (a.kind_ != b.kind_) throw DomainError("cannot compare " + a.to_string() + " and " + b.to_string());
  const int c = a.kind_ == K::LogOfCount ? cmp(a.count_, b.count_) : cmp(a.value_, b.value_);
  return c <=> 0;
}

LengthValue value_add(const LengthValue& a, const LengthValue& b) { return a + b; }

std::strong_ordering value_cmp(const LengthValue& a, const LengthValue& b) { return a <=> b; }

LengthValue value_times(const LengthValue& x, unsigned long n) {
  switch (x.kind()) {
    case LengthValue::Kind::LogOfCount:
      return LengthValue::log_of(pow(x.count(), n));
    case LengthValue::Kind::Rational:
      return LengthValue::rational(x.value() * Rational(n));
    case LengthValue::Kind::Infinity:
      break;
  }
  return n == 0 ? LengthValue::rational(0) : x;
}

// --- WeakLengthSpec ---------------------------------------------------------

LengthValue::Kind WeakLengthSpec::value_kind() const {
  return kind == Kind::LogCard || kind == Kind::TorsLog ? LengthValue::Kind::LogOfCount : LengthValue::Kind::Rational;
}

std::string WeakLengthSpec::name() const {
  switch (kind) {
    case Kind::LogCard:
      return "log_card";
    case Kind::TorsLog:
      return "tors_log(" + k.get_str() + ")";
    case Kind::RankLen:
      return "rank";
    case Kind::NuLen:
      return "nu";
    case Kind::GenFn:
      return "gen";
  }
  return "";
}

LengthValue rank_length(const FinAbGroup& m) { return LengthValue::rational(Rational(m.free_rank())); }

LengthValue nu_length(const FinAbGroup& m) {
  if (m.free_rank() > 0) return LengthValue::infinity();
  unsigned long total = 0;
  for (const auto& d : m.invariant_factors()) total += prime_exponent_sum(d);
  return LengthValue::rational(Rational(total));
}

LengthValue eval_weak_length(const WeakLengthSpec& spec, const FinAbGroup& g, const AbSet& a) {
  if (a.empty()) throw DomainError("weak lengths are defined on nonempty sets");
  g.require(a);
  switch (spec.kind) {
    case WeakLengthSpec::Kind::LogCard:
      return LengthValue::log_of(Integer(static_cast<unsigned long>(a.size())));
    case WeakLengthSpec::Kind::TorsLog: {
      if (spec.k <= 0) throw DomainError("torsion order must be positive");
      unsigned long hits = 0;
      for (const auto& x : a) hits += g.scale(spec.k, x).is_zero();
      if (hits == 0) {
        throw DomainError("tors_log(" + spec.k.get_str() + ") undefined: no element of " + set_to_string(a) +
                          " is killed by " + spec.k.get_str());
      }
      return LengthValue::log_of(Integer(hits));
    }
    case WeakLengthSpec::Kind::RankLen:
      return rank_length(subgroup_generated(g, a).group);
    case WeakLengthSpec::Kind::NuLen:
      return nu_length(subgroup_generated(g, a).group);
    case WeakLengthSpec::Kind::GenFn: {
      const FinAbGroup s = subgroup_generated(g, a).group;
      return LengthValue::rational(Rational(s.free_rank() + s.invariant_factors().size()));
    }
  }
  throw DomainError("unknown weak length");
}

}  // namespace mwl
