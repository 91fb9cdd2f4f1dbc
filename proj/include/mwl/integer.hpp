#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mwl {

using Integer = mpz_class;
using Rational = mpq_class;

std::size_t hash_integer(const Integer& x) noexcept;
std::string to_string(const Integer& x);
std::string to_string(const Rational& q);

/// Parses a decimal integer; throws InputError on malformed text.
Integer parse_integer(const std::string& text);
/// Parses "p" or "p/q".
Rational parse_rational(const std::string& text);

/// Residue of x in [0, m) for m > 0.
Integer mod_floor(const Integer& x, const Integer& m);
Integer floor_div(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long exponent);

/// Sum of the exponents in the prime factorisation of n >= 1.
unsigned long prime_exponent_sum(Integer n);

inline void hash_combine(std::size_t& seed, std::size_t h) noexcept {
  seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> col(std::size_t c) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row dst += q * row src
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& q);
  /// col dst += q * col src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& q);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix transpose() const;
  std::vector<Integer> apply(const std::vector<Integer>& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Result of smith_normal_form: diagonal == left * input * right, with
/// right_inverse * right == identity.  Diagonal entries are non-negative and
/// each divides the next; zeros come last.
struct SmithForm {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;
  IntMatrix right_inverse;

  std::size_t rank() const;
  /// Diagonal entries d_0..d_{min(r,c)-1}.
  std::vector<Integer> invariants() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Columns form a basis of the integer kernel {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

}  // namespace mwl
