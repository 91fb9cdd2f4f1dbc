#pragma once

// Ratio tables ℓ(A^[F_n]) / |F_n| along box Følner sequences, their limit
// certificates, lower bounds for the mean weak length of a module, and the
// addition-formula harness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mwl/groupring.hpp"
#include "mwl/weaklength.hpp"

namespace mwl {

/// Exact value of ℓ / den: log(count)/den, q/den, or +∞.  Log ratios are
/// kept with the smallest possible denominator (log 16 / 4 becomes log 2 / 1).
class ExactRatio {
 public:
  using Kind = LengthValue::Kind;

  static ExactRatio of(const LengthValue& v, const Integer& den);
  static ExactRatio zero(Kind kind);

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }
  bool is_zero() const;
  /// log(count())/den() for log ratios.
  const Integer& count() const { return count_; }
  const Integer& den() const { return den_; }
  /// The rational value for rational ratios.
  const Rational& value() const { return value_; }

  double approx() const;
  std::string to_string() const;

  friend ExactRatio operator+(const ExactRatio& a, const ExactRatio& b);
  friend bool operator==(const ExactRatio& a, const ExactRatio& b);
  friend std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b);

 private:
  ExactRatio(Kind k, Integer c, Integer d, Rational v)
      : kind_(k), count_(std::move(c)), den_(std::move(d)), value_(std::move(v)) {}
  void normalize();

  Kind kind_;
  Integer count_;
  Integer den_;
  Rational value_;
};

/// F_n = [0, n)^d × (torsion part of Γ), n = 1..n_max.
class FolnerSequence {
 public:
  FolnerSequence(GroupPresentation gamma, unsigned n_max);

  const GroupPresentation& gamma() const { return gamma_; }
  unsigned n_max() const { return n_max_; }
  std::vector<GroupElem> box(unsigned n) const;
  Integer box_size(unsigned n) const;

  /// Largest n ≤ 12 with |A|^|F_n| ≤ 10⁶ (at least 1).
  static unsigned default_n_max(const GroupPresentation& gamma, std::size_t set_size);

 private:
  GroupPresentation gamma_;
  unsigned n_max_;
};

struct InvarianceResult {
  /// |{s ∈ F : K + s ⊆ F}|
  std::size_t count = 0;
  bool invariant = false;
};

/// (K, δ)-invariance of F inside Γ; δ must lie in (0, 1].
InvarianceResult is_invariant(const GroupPresentation& gamma, const std::vector<GroupElem>& f,
                              const std::vector<GroupElem>& k, const Rational& delta);

struct RatioRow {
  unsigned n = 0;
  Integer box_size;
  LengthValue value = LengthValue::log_of(1);
  ExactRatio ratio = ExactRatio::zero(LengthValue::Kind::LogOfCount);
};

struct SubadditivityCheck {
  bool applicable = false;
  std::size_t pairs_checked = 0;
  /// First failing (n, m), if any.
  std::optional<std::pair<unsigned, unsigned>> violation;
};

struct MeanEstimate {
  enum class Limit { None, ConstantRatios, FiniteModule };

  std::vector<RatioRow> rows;
  std::optional<ExactRatio> running_inf;
  bool constant_exact = false;
  bool zero_in_a = false;
  bool symmetric_a = false;
  bool strongly_subadditive = false;
  bool truncated = false;
  std::string truncation_reason;
  /// "automaton", "enumeration" or "generators".
  std::string method;
  /// a_{n+m} ≤ a_n + a_m on computed rows (Γ = Z × finite, 0 ∈ A).
  SubadditivityCheck fekete;
  /// ratio(2n) ≤ ratio(n) when strongly subadditive.
  SubadditivityCheck doubling;
  Limit limit = Limit::None;
  /// Certified limit (ConstantRatios or FiniteModule).
  std::optional<ExactRatio> limit_value;
  /// |module| for the FiniteModule certificate.
  std::optional<Integer> module_cardinality;
};

std::string limit_name(MeanEstimate::Limit l);

/// Exact ℓ(A^[F_n]) for one finite F.
LengthValue orbit_value(const ShiftModule& m, const GRSet& a, const WeakLengthSpec& spec,
                        const std::vector<GroupElem>& f, std::string* method = nullptr);

MeanEstimate ratio_sequence(const ShiftModule& m, const GRSet& a, const WeakLengthSpec& spec,
                            const FolnerSequence& seq);

struct MeanBound {
  /// Largest certified witness limit, or 0 when none is certified.
  ExactRatio lower_bound = ExactRatio::zero(LengthValue::Kind::LogOfCount);
  bool certified = false;
  std::optional<std::size_t> best_witness;
  std::vector<MeanEstimate> estimates;
};

/// Empty witness lists give the trivial bound 0.
MeanBound mean_lower_bound(const ShiftModule& m, const std::vector<GRSet>& witnesses, const WeakLengthSpec& spec,
                           const FolnerSequence& seq);

struct EasyDirectionRow {
  std::size_t b_witness = 0;
  std::size_t c_witness = 0;
  unsigned n = 0;
  LengthValue lhs = LengthValue::log_of(1);
  LengthValue rhs = LengthValue::log_of(1);
  bool holds = true;
};

struct AdditionReport {
  enum class Verdict { ExactEqual, UnequalOnWitnesses, Inconclusive };

  MeanBound m1;
  MeanBound m2;
  MeanBound quotient;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Integer> quotient_cardinality;
  /// ℓ((B + C)^[F_n]) ≥ ℓ(B^[F_n]) + ℓ(π(C)^[F_n]) per witness pair and n.
  std::vector<EasyDirectionRow> easy_direction;
  bool easy_direction_holds = true;
  std::string note;
};

std::string verdict_name(AdditionReport::Verdict v);

/// m2 must carry no quotient; n1 is the submodule M₁.  Witnesses for M₁
/// must lie in N₁; witnesses for M₂/M₁ are given by lifts to M₂.
AdditionReport addition_report(const ShiftModule& m2, const SubmodulePresentation& n1, const std::vector<GRSet>& w1,
                               const std::vector<GRSet>& w2, const std::vector<GRSet>& wq, const WeakLengthSpec& spec,
                               std::optional<unsigned> n_max = std::nullopt);

}  // namespace mwl
