#pragma once

// Modules over group rings ZΓ for finitely generated abelian Γ, realized as
// finitely supported coefficient-valued functions with the shift action,
// optionally acting through a quotient of Γ and optionally divided by a
// submodule.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwl/finabelian.hpp"
#include "mwl/laurent.hpp"

namespace mwl {

/// Γ = Z^d ⊕ Z/m_1 ⊕ ... is presented like any other abelian group.
using GroupPresentation = FinAbGroup;
using GroupElem = AbElement;

struct Term {
  GroupElem pos;
  AbElement coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Finitely supported function, terms sorted by position, no zero coefficients.
class GRElement {
 public:
  GRElement() = default;
  /// Terms must already be canonical; sorts, merges nothing, drops zeros.
  explicit GRElement(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient at pos, or nullopt when pos is outside the support.
  const AbElement* at(const GroupElem& pos) const;

  std::string to_string() const;

  friend bool operator==(const GRElement& a, const GRElement& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const GRElement& a, const GRElement& b);

 private:
  std::vector<Term> terms_;
};

struct GRElementHash {
  std::size_t operator()(const GRElement& x) const noexcept;
};

using GRSet = FiniteSubset<GRElement>;

/// Submodule N used to form a quotient module.
struct SubmodulePresentation {
  enum class Closure {
    /// N = DΓ for a subgroup D of the coefficient group, any Γ.
    CoefficientSubgroup,
    /// N = the submodule generated by `generators`; Γ' = Z and coefficients
    /// (Z/p)^k with p prime.
    PrincipalGammaZ,
  };

  Closure closure = Closure::CoefficientSubgroup;
  std::vector<AbElement> coeff_generators;
  std::vector<GRElement> generators;

  static SubmodulePresentation coefficient_subgroup(std::vector<AbElement> gens) {
    return {Closure::CoefficientSubgroup, std::move(gens), {}};
  }
  static SubmodulePresentation principal(std::vector<GRElement> gens) {
    return {Closure::PrincipalGammaZ, {}, std::move(gens)};
  }
  std::string name() const;
};

/// Largest finite set of module elements built by enumeration.
inline constexpr std::size_t kFiniteSubsetCap = 1000000;

class ShiftModule {
 public:
  /// CΓ, or C[Γ'] with Γ acting through `action` : Γ -> Γ', divided by
  /// `quotient` when given.  Throws ConfigError for unsupported quotients.
  ShiftModule(GroupPresentation gamma, FinAbGroup coeff, std::optional<AbHom> action = std::nullopt,
              std::optional<SubmodulePresentation> quotient = std::nullopt);

  const GroupPresentation& gamma() const { return gamma_; }
  /// Γ' (equals Γ without an action hom).
  const FinAbGroup& support_group() const { return support_; }
  /// Coefficient group C of ambient representatives.
  const FinAbGroup& coeff() const { return coeff_; }
  /// Coefficient group of canonical representatives (C/D for a coefficient
  /// quotient, C otherwise).
  const FinAbGroup& carrier_coeff() const { return carrier_; }
  const std::optional<AbHom>& action() const { return action_; }
  const std::optional<SubmodulePresentation>& quotient() const { return quotient_; }
  /// Canonical representatives are plain coefficient functions whose sums
  /// are computed position by position (no normal-form reduction needed).
  bool plain_carrier() const { return !reducer_; }
  bool has_principal_quotient() const { return reducer_ != nullptr; }
  const HermiteReducer* reducer() const { return reducer_.get(); }

  /// Image of s ∈ Γ in Γ'.
  GroupElem act(const GroupElem& s) const;

  /// Canonical representative of the class of an ambient function (support
  /// in Γ', coefficients in C).
  GRElement canonical(const GRElement& ambient) const;
  /// Builds from (position coords in Γ', coefficient coords in C) pairs.
  GRElement element(const std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>>& terms) const;
  GRElement delta(const GroupElem& pos, const AbElement& coeff) const;
  /// Checks that x is a canonical element of this module.
  void require(const GRElement& x) const;

  GRElement zero() const { return {}; }
  GRElement add(const GRElement& x, const GRElement& y) const;
  GRElement sub(const GRElement& x, const GRElement& y) const;
  GRElement neg(const GRElement& x) const;
  GRElement scale(const Integer& k, const GRElement& x) const;
  /// s·x, (s·x)(t) = x(s⁻¹t).
  GRElement translate(const GroupElem& s, const GRElement& x) const;
  /// s⁻¹·x.
  GRElement translate_inverse(const GroupElem& s, const GRElement& x) const;

  /// Number of elements when the module is finite.
  std::optional<Integer> cardinality() const;
  std::string to_string() const;

 private:
  GRElement combine(const GRElement& x, const GRElement& y, bool subtract) const;
  LaurentVector to_laurent(const GRElement& x) const;
  GRElement from_laurent(const LaurentVector& v) const;
  GRElement shift_support(const GRElement& x, const GroupElem& by) const;

  GroupPresentation gamma_;
  FinAbGroup support_;
  FinAbGroup coeff_;
  FinAbGroup carrier_;
  std::optional<AbHom> action_;
  std::optional<SubmodulePresentation> quotient_;
  std::optional<AbHom> coeff_projection_;
  std::shared_ptr<const HermiteReducer> reducer_;
};

/// Whether x lies in the submodule N presented by n inside the plain module m.
bool submodule_contains(const ShiftModule& m, const SubmodulePresentation& n, const GRElement& x);

GRSet gr_translate(const ShiftModule& m, const GroupElem& s, const GRSet& a);
GRSet minkowski_sum(const ShiftModule& m, const GRSet& a, const GRSet& b);
GRSet gr_negate(const ShiftModule& m, const GRSet& a);
GRSet gr_with_zero(const GRSet& a);

/// A^[F] = Σ_{s∈F} s⁻¹A.  Throws CapacityError past `cap` elements.
GRSet orbit_sum(const ShiftModule& m, const GRSet& a, const std::vector<GroupElem>& f,
                std::size_t cap = kFiniteSubsetCap);

/// Generators of <A^[F]>: Σ_s s⁻¹a₀ and s⁻¹(a − a₀); no enumeration needed.
std::vector<GRElement> orbit_sum_generators(const ShiftModule& m, const GRSet& a, const std::vector<GroupElem>& f);

/// Canonical representative of x + N for a principal quotient module.
GRElement submodule_normal_form(const ShiftModule& m, const GRElement& x);

/// Module over C/D with the coefficient-wise projection.
struct CoeffQuotient {
  ShiftModule module;
  AbHom coeff_projection;

  GRElement project(const GRElement& x) const;
};
CoeffQuotient coeff_quotient(const ShiftModule& m, const std::vector<AbElement>& d);

/// A set of module elements viewed inside a finite-rank abelian group: one
/// block of carrier coordinates per support position.
struct FlatSet {
  FinAbGroup group;
  AbSet set;
};
/// Requires a plain carrier (no principal quotient).
FlatSet flatten(const ShiftModule& m, const std::vector<GRElement>& elems);

}  // namespace mwl
