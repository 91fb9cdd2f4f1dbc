#include "mwl/laurent.hpp"

#include <algorithm>

#include "mwl/errors.hpp"

namespace mwl {

namespace {

long mod_p(long x, long p) {
  const long r = x % p;
  return r < 0 ? r + p : r;
}

}  // namespace

long inverse_mod(long a, long p) {
  long r0 = mod_p(a, p), r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const long q = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw DomainError(std::to_string(a) + " is not invertible mod " + std::to_string(p));
  return mod_p(s0, p);
}

LaurentPoly LaurentPoly::monomial(long p, long coeff, long exp) {
  LaurentPoly f(p);
  f.set(exp, coeff);
  return f;
}

long LaurentPoly::coeff(long exp) const {
  if (c_.empty() || exp < low_ || exp > high()) return 0;
  return c_[static_cast<std::size_t>(exp - low_)];
}

void LaurentPoly::set(long exp, long value) {
  value = mod_p(value, p_);
  if (c_.empty()) {
    if (value == 0) return;
    low_ = exp;
    c_.assign(1, value);
    return;
  }
  if (exp < low_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(low_ - exp), 0);
    low_ = exp;
  } else if (exp > high()) {
    c_.resize(static_cast<std::size_t>(exp - low_) + 1, 0);
  }
  c_[static_cast<std::size_t>(exp - low_)] = value;
  trim();
}

void LaurentPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    low_ = 0;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<long>(lead);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  LaurentPoly out(p_);
  out.low_ = std::min(low_, o.low_);
  const long hi = std::max(high(), o.high());
  out.c_.assign(static_cast<std::size_t>(hi - out.low_) + 1, 0);
  for (long e = low_; e <= high(); ++e) out.c_[static_cast<std::size_t>(e - out.low_)] = coeff(e);
  for (long e = o.low_; e <= o.high(); ++e) {
    long& slot = out.c_[static_cast<std::size_t>(e - out.low_)];
    slot = (slot + o.coeff(e)) % p_;
  }
  out.trim();
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + o.scaled(-1); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out(p_);
  if (is_zero() || o.is_zero()) return out;
  out.low_ = low_ + o.low_;
  out.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out.c_[i + j] = (out.c_[i + j] + c_[i] * o.c_[j]) % p_;
  }
  out.trim();
  return out;
}

LaurentPoly LaurentPoly::scaled(long c) const {
  c = mod_p(c, p_);
  LaurentPoly out(p_);
  if (c == 0 || is_zero()) return out;
  out.low_ = low_;
  out.c_ = c_;
  for (auto& x : out.c_) x = x * c % p_;
  return out;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly out = *this;
  if (!out.is_zero()) out.low_ += k;
  return out;
}

LaurentPoly LaurentPoly::normalized(LaurentPoly* unit) const {
  if (is_zero()) throw DomainError("cannot normalize the zero polynomial");
  const long inv = inverse_mod(c_.back(), p_);
  if (unit) *unit = monomial(p_, inv, -low_);
  return scaled(inv).shifted(-low_);
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (long e = low_; e <= high(); ++e) {
    const long c = coeff(e);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += e == 1 ? std::string("t") : "t^" + std::to_string(e);
    }
  }
  return out;
}

std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  const long p = b.prime();
  if (b.is_zero() || b.low() != 0 || b.coeff(b.high()) != 1) {
    throw DomainError("laurent_divmod: divisor must be normalized");
  }
  const long d = b.high();
  LaurentPoly q(p), r = a;
  const long b0inv = inverse_mod(b.coeff(0), p);
  // clear exponents below 0 using the constant term of b
  while (!r.is_zero() && r.low() < 0) {
    const LaurentPoly m = LaurentPoly::monomial(p, r.coeff(r.low()) * b0inv, r.low());
    q = q + m;
    r = r - m * b;
  }
  // clear exponents >= d using the leading term of b
  while (!r.is_zero() && r.high() >= d) {
    const LaurentPoly m = LaurentPoly::monomial(p, r.coeff(r.high()), r.high() - d);
    q = q + m;
    r = r - m * b;
  }
  return {q, r};
}

// --- HermiteReducer ---------------------------------------------------------

HermiteReducer::HermiteReducer(long p, std::size_t k, const std::vector<LaurentVector>& generators) : p_(p), k_(k) {
  if (p < 2 || !mpz_probab_prime_p(Integer(p).get_mpz_t(), 30)) {
    throw DomainError("normal forms need a prime coefficient field, got modulus " + std::to_string(p));
  }
  std::vector<LaurentVector> work;
  for (const auto& g : generators) {
    if (g.size() != k) throw DomainError("generator has the wrong number of coordinates");
    if (std::any_of(g.begin(), g.end(), [](const LaurentPoly& f) { return !f.is_zero(); })) work.push_back(g);
  }
  auto axpy = [&](LaurentVector& dst, const LaurentPoly& f, const LaurentVector& src) {
    for (std::size_t c = 0; c < k_; ++c) dst[c] = dst[c] - f * src[c];
  };

  std::size_t top = 0;
  for (std::size_t col = 0; col < k_ && top < work.size(); ++col) {
    // Euclid on column col among rows top..end until one nonzero entry remains
    for (;;) {
      std::size_t best = work.size();
      for (std::size_t r = top; r < work.size(); ++r) {
        if (work[r][col].is_zero()) continue;
        if (best == work.size() || work[r][col].span() < work[best][col].span()) best = r;
      }
      if (best == work.size()) break;
      std::swap(work[top], work[best]);
      LaurentPoly unit(p_);
      work[top][col] = work[top][col].normalized(&unit);
      for (std::size_t c = col + 1; c < k_; ++c) work[top][c] = work[top][c] * unit;
      bool others = false;
      for (std::size_t r = top + 1; r < work.size(); ++r) {
        if (work[r][col].is_zero()) continue;
        const auto [q, rem] = laurent_divmod(work[r][col], work[top][col]);
        axpy(work[r], q, work[top]);
        others = others || !work[r][col].is_zero();
      }
      if (!others) break;
    }
    if (top < work.size() && !work[top][col].is_zero()) {
      pivots_.push_back(col);
      ++top;
    }
  }
  work.resize(top);
  rows_ = std::move(work);
  // reduce entries above each pivot
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t col = pivots_[i];
    for (std::size_t r = 0; r < i; ++r) {
      if (rows_[r][col].is_zero()) continue;
      const auto [q, rem] = laurent_divmod(rows_[r][col], rows_[i][col]);
      axpy(rows_[r], q, rows_[i]);
    }
  }
}

LaurentVector HermiteReducer::reduce(const LaurentVector& x) const {
  if (x.size() != k_) throw DomainError("vector has the wrong number of coordinates");
  LaurentVector out = x;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t col = pivots_[i];
    if (out[col].is_zero()) continue;
    const auto [q, rem] = laurent_divmod(out[col], rows_[i][col]);
    for (std::size_t c = 0; c < k_; ++c) out[c] = out[c] - q * rows_[i][c];
  }
  return out;
}

bool HermiteReducer::contains(const LaurentVector& x) const {
  const LaurentVector r = reduce(x);
  return std::all_of(r.begin(), r.end(), [](const LaurentPoly& f) { return f.is_zero(); });
}

std::optional<Integer> HermiteReducer::quotient_cardinality() const {
  if (!finite_quotient()) return std::nullopt;
  unsigned long exponent = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) exponent += static_cast<unsigned long>(rows_[i][pivots_[i]].span());
  return pow(Integer(p_), exponent);
}

}  // namespace mwl
