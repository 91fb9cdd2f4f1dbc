#pragma once

// Laurent polynomials over a prime field F_p and normal forms modulo
// submodules of F_p[t, t⁻¹]^k.  F_p[t, t⁻¹] is a Euclidean domain whose units
// are c·t^j, so submodules have a Hermite basis and cosets have unique
// reduced representatives.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mwl/integer.hpp"

namespace mwl {

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(long p) : p_(p) {}
  /// coeff · t^exp
  static LaurentPoly monomial(long p, long coeff, long exp);

  long prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  /// Lowest and highest exponent with nonzero coefficient (not for zero).
  long low() const { return low_; }
  long high() const { return low_ + static_cast<long>(c_.size()) - 1; }
  long coeff(long exp) const;
  /// high() - low(); the Euclidean norm.
  long span() const { return c_.empty() ? -1 : static_cast<long>(c_.size()) - 1; }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(long c) const;
  /// Multiplication by t^k.
  LaurentPoly shifted(long k) const;

  /// Associate with lowest exponent 0 and leading coefficient 1; also
  /// returns the unit u = c·t^j with normalized() = u · (*this).
  LaurentPoly normalized(LaurentPoly* unit = nullptr) const;

  std::string to_string() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.p_ == b.p_ && a.low_ == b.low_ && a.c_ == b.c_;
  }

 private:
  void set(long exp, long value);
  void trim();

  long p_ = 2;
  long low_ = 0;
  std::vector<long> c_;
};

/// Quotient q and remainder r with a = q·b + r, where b is normalized
/// (lowest exponent 0, b(0) ≠ 0, monic) and r is supported in [0, span(b)).
std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& a, const LaurentPoly& b);

long inverse_mod(long a, long p);

using LaurentVector = std::vector<LaurentPoly>;

/// Hermite basis of the submodule of F_p[t, t⁻¹]^k spanned by generators,
/// with reduction of vectors to canonical coset representatives.
class HermiteReducer {
 public:
  /// Throws DomainError unless p is prime and every generator has length k.
  HermiteReducer(long p, std::size_t k, const std::vector<LaurentVector>& generators);

  long prime() const { return p_; }
  std::size_t rank_bound() const { return k_; }
  const std::vector<LaurentVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  /// Canonical representative of x modulo the submodule.
  LaurentVector reduce(const LaurentVector& x) const;
  bool contains(const LaurentVector& x) const;

  /// The quotient is finite iff every column carries a pivot.
  bool finite_quotient() const { return pivots_.size() == k_; }
  /// p^(sum of pivot spans) when finite.
  std::optional<Integer> quotient_cardinality() const;

 private:
  long p_;
  std::size_t k_;
  std::vector<LaurentVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace mwl
