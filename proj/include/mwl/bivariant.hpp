#pragma once

// Two-argument upgradings ℓ(A, B) of weak lengths: the cover upgrading of
// log-cardinality and the quotient upgrading of length-induced weak lengths.

#include <cstdint>
#include <string>
#include <vector>

#include "mwl/axioms.hpp"
#include "mwl/weaklength.hpp"

namespace mwl {

struct BivariantSpec {
  enum class Kind { CoverLog, QuotientLength };

  Kind kind = Kind::CoverLog;
  /// RankLen or NuLen for QuotientLength; LogCard for CoverLog.
  WeakLengthSpec base = WeakLengthSpec::log_card();

  static BivariantSpec cover_log() { return {Kind::CoverLog, WeakLengthSpec::log_card()}; }
  /// Throws DomainError unless base is length-induced.
  static BivariantSpec quotient_length(const WeakLengthSpec& base);

  std::string name() const;
};

/// Largest |A| accepted by the exact cover search.
inline constexpr std::size_t kCoverUniverseCap = 24;

struct CoverResult {
  LengthValue value;
  /// Lexicographically least minimum cover.
  AbSet cover;
};

/// min log|C| over C with A ⊆ C + B.  Only C ⊆ A − B needs searching: a
/// translate c + B missing A can be dropped from any cover.
CoverResult cover_bivariant(const FinAbGroup& g, const AbSet& a, const AbSet& b);

/// ℓ(A, B) = ℓ(φ_B(A)) for the projection φ_B : g -> g/<B>.
LengthValue quotient_bivariant(const WeakLengthSpec& base, const FinAbGroup& g, const AbSet& a, const AbSet& b);

/// log|φ_B(A)|: the quotient construction applied to log-cardinality.
LengthValue quotient_log_card(const FinAbGroup& g, const AbSet& a, const AbSet& b);

LengthValue eval_bivariant(const BivariantSpec& spec, const FinAbGroup& g, const AbSet& a, const AbSet& b);

/// B ⊆ ker φ with ℓ(A, B) = ℓ(φ(A)).  CoverLog: (A − A) ∩ ker φ together
/// with 0.  QuotientLength: generators of <A> ∩ ker φ together with 0.
AbSet kernel_witness(const BivariantSpec& spec, const AbHom& phi, const AbSet& a);

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::optional<Counterexample> counterexample;
};

struct UpgradingReport {
  BivariantSpec spec;
  std::size_t budget = 0;
  std::vector<PropertyResult> properties;

  bool passed() const;
  const PropertyResult& property(const std::string& name) const;
};

/// Default sampling bounds for the bivariant checks: finite groups of order
/// at most 36 and sets of at most 6 elements.
SampleOptions bivariant_sample_options();

UpgradingReport check_upgrading_proper(const BivariantSpec& spec, std::uint64_t seed, std::size_t budget,
                                       const SampleOptions& options = bivariant_sample_options());

}  // namespace mwl
