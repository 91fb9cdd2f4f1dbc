#include <random>

#include "doctest.h"
#include "mwl/integer.hpp"
#include "support/oracles.hpp"

using namespace mwl;

namespace {

void check_smith(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  CHECK(s.left * m * s.right == s.diagonal);
  CHECK(s.right * s.right_inverse == IntMatrix::identity(m.cols()));
  CHECK(abs(oracle::det(s.left)) == 1);
  CHECK(abs(oracle::det(s.right)) == 1);
  for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
    for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
      if (i != j) CHECK(s.diagonal(i, j) == 0);
  const auto inv = s.invariants();
  for (std::size_t i = 0; i < inv.size(); ++i) {
    CHECK(inv[i] >= 0);
    if (i + 1 < inv.size() && inv[i] != 0) CHECK(mpz_divisible_p(inv[i + 1].get_mpz_t(), inv[i].get_mpz_t()));
  }
  CHECK(inv == oracle::invariant_factors(m));
}

}  // namespace

TEST_CASE("smith form of the worked 2x2 example") {
  const IntMatrix m{{2, 4}, {6, 8}};
  const SmithForm s = smith_normal_form(m);
  CHECK(s.diagonal == IntMatrix{{2, 0}, {0, 4}});
  check_smith(m);
}

TEST_CASE("smith form of identity and zero") {
  const SmithForm id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.diagonal == IntMatrix::identity(3));
  CHECK(id.left == IntMatrix::identity(3));
  CHECK(id.right == IntMatrix::identity(3));
  const SmithForm z = smith_normal_form(IntMatrix{{0}});
  CHECK(z.diagonal == IntMatrix{{0}});
  const SmithForm e = smith_normal_form(IntMatrix(0, 0));
  CHECK(e.diagonal.rows() == 0);
}

TEST_CASE("smith form agrees with determinantal divisors on random matrices") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = dim(rng), c = dim(rng);
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = entry(rng);
    CAPTURE(m.to_string());
    check_smith(m);
  }
}

TEST_CASE("integer kernel spans the solutions") {
  const IntMatrix m{{2, 4, 6}, {1, 2, 3}};
  const IntMatrix k = integer_kernel(m);
  CHECK(k.cols() == 2);
  const IntMatrix prod = m * k;
  CHECK(prod == IntMatrix(2, 2));
}

TEST_CASE("prime exponent sums") {
  CHECK(prime_exponent_sum(1) == 0);
  CHECK(prime_exponent_sum(12) == 3);
  CHECK(prime_exponent_sum(97) == 1);
  CHECK(prime_exponent_sum(1024) == 10);
}
