#pragma once

// Finitely generated abelian groups presented as direct sums of cyclic
// groups, with exact subgroup, quotient, kernel and image computations.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwl/finite_subset.hpp"
#include "mwl/integer.hpp"

namespace mwl {

/// Element of a FinAbGroup in canonical residue form: torsion coordinates
/// reduced into [0, m), free coordinates unreduced.
struct AbElement {
  std::vector<Integer> coords;

  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const AbElement& a, const AbElement& b) { return a.coords == b.coords; }
  friend bool operator<(const AbElement& a, const AbElement& b);
};

struct AbElementHash {
  std::size_t operator()(const AbElement& x) const noexcept;
};

using AbSet = FiniteSubset<AbElement>;

/// Z^r (+) Z/m_1 (+) ... presented coordinate-wise by a list of moduli, where
/// modulus 0 marks a free coordinate.  The moduli need not form a divisibility
/// chain; free_rank() and invariant_factors() report the isomorphism type.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<Integer> moduli);

  /// Canonical presentation: free coordinates first, then the invariant
  /// factors, which must be >= 2 and form a divisibility chain.
  static FinAbGroup canonical(std::size_t free_rank, std::vector<Integer> invariant_factors);
  static FinAbGroup free(std::size_t rank);
  static FinAbGroup cyclic(const Integer& m);

  const std::vector<Integer>& moduli() const { return moduli_; }
  std::size_t ambient_dim() const { return moduli_.size(); }
  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return invariant_factors_; }
  bool is_canonical() const;
  bool is_trivial() const { return free_rank_ == 0 && invariant_factors_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  /// Product of invariant factors; nullopt when the group is infinite.
  std::optional<Integer> cardinality() const;
  bool isomorphic_to(const FinAbGroup& other) const;

  AbElement element(std::vector<Integer> coords) const;
  AbElement element(std::initializer_list<long> coords) const;
  AbElement zero() const;
  AbElement add(const AbElement& x, const AbElement& y) const;
  AbElement sub(const AbElement& x, const AbElement& y) const;
  AbElement neg(const AbElement& x) const;
  AbElement scale(const Integer& k, const AbElement& x) const;
  /// Unit vector of coordinate i.
  AbElement basis(std::size_t i) const;

  bool contains(const AbElement& x) const;
  /// Throws DomainError unless x belongs to this group.
  void require(const AbElement& x) const;
  void require(const AbSet& a) const;

  std::string to_string() const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.moduli_ == b.moduli_; }

 private:
  std::vector<Integer> moduli_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> invariant_factors_;
};

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

/// Homomorphism given by an integer matrix acting on coordinate vectors
/// (target_dim x source_dim).  Well-definedness is checked on construction.
class AbHom {
 public:
  AbHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix);
  static AbHom identity(const FinAbGroup& g);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  AbElement apply(const AbElement& x) const;
  AbSet apply(const AbSet& a) const;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  IntMatrix matrix_;
};

/// outer o inner
AbHom compose(const AbHom& outer, const AbHom& inner);

/// A subgroup as an abstract canonical presentation plus its inclusion map.
struct SubgroupEmbedding {
  FinAbGroup group;
  AbHom inclusion;
};

/// A quotient as a canonical presentation plus the projection map.
struct QuotientMap {
  FinAbGroup group;
  AbHom projection;
};

SubgroupEmbedding subgroup_generated(const FinAbGroup& g, std::span<const AbElement> gens);
SubgroupEmbedding subgroup_generated(const FinAbGroup& g, const AbSet& gens);
QuotientMap quotient_group(const FinAbGroup& g, std::span<const AbElement> gens);
QuotientMap quotient_group(const FinAbGroup& g, const AbSet& gens);
SubgroupEmbedding hom_kernel(const AbHom& h);
SubgroupEmbedding hom_image(const AbHom& h);
/// T_k(g) = {x : k x = 0}; k must be positive.
SubgroupEmbedding torsion_k(const FinAbGroup& g, const Integer& k);

/// Every element of a finite group, in lexicographic coordinate order.
/// Throws CapacityError if the group is infinite or larger than limit.
std::vector<AbElement> enumerate_elements(const FinAbGroup& g, std::size_t limit = 1u << 20);

// Set arithmetic inside one group.
AbSet set_sum(const FinAbGroup& g, const AbSet& a, const AbSet& b);
AbSet set_difference(const FinAbGroup& g, const AbSet& a, const AbSet& b);
AbSet set_with_zero(const FinAbGroup& g, const AbSet& a);
/// {(x, y) : x in a, y in b} inside direct_sum(g, h).
AbSet set_product(const AbSet& a, const AbSet& b);
AbSet set_filter(const AbSet& a, const std::function<bool(const AbElement&)>& keep);
std::string set_to_string(const AbSet& a);

}  // namespace mwl
