#include "mwl/sampling.hpp"

#include <numeric>

#include "mwl/errors.hpp"

namespace mwl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Rng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("Rng::below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % n;
  }
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw DomainError("Rng::uniform: empty range");
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rng Rng::split(std::uint64_t index) const { return Rng(splitmix64(seed_ ^ splitmix64(index + 1))); }

// --- SampleGenerator --------------------------------------------------------

FinAbGroup SampleGenerator::finite_group() {
  std::vector<Integer> moduli;
  long order = 1;
  const auto coords = rng_.below(opt_.max_torsion_coords) + 1;
  for (std::uint64_t i = 0; i < coords; ++i) {
    const long room = opt_.max_order / order;
    if (room < 2) break;
    const long m = rng_.uniform(2, std::min<long>(room, 12));
    moduli.emplace_back(m);
    order *= m;
  }
  return FinAbGroup(std::move(moduli));
}

FinAbGroup SampleGenerator::group() {
  const auto free = opt_.max_free_rank == 0 ? 0 : rng_.below(opt_.max_free_rank + 1);
  std::vector<Integer> moduli(free, Integer(0));
  const FinAbGroup t = finite_group();
  moduli.insert(moduli.end(), t.moduli().begin(), t.moduli().end());
  // interleave so free coordinates are not always first
  for (std::size_t i = moduli.size(); i > 1; --i) std::swap(moduli[i - 1], moduli[rng_.below(i)]);
  return FinAbGroup(std::move(moduli));
}

AbElement SampleGenerator::element(const FinAbGroup& g) {
  std::vector<Integer> c;
  c.reserve(g.ambient_dim());
  for (const auto& m : g.moduli()) {
    if (m == 0) {
      c.emplace_back(rng_.uniform(-opt_.free_range, opt_.free_range));
    } else {
      c.emplace_back(rng_.uniform(0, m.get_si() - 1));
    }
  }
  return g.element(std::move(c));
}

AbSet SampleGenerator::subset(const FinAbGroup& g) { return subset(g, opt_.max_set_size); }

AbSet SampleGenerator::subset(const FinAbGroup& g, std::size_t max_size) {
  const auto n = rng_.below(max_size) + 1;
  std::vector<AbElement> v;
  for (std::uint64_t i = 0; i < n; ++i) v.push_back(element(g));
  if (opt_.adjoin_zero) v.push_back(g.zero());
  return AbSet(std::move(v));
}

AbHom SampleGenerator::hom(const FinAbGroup& source, const FinAbGroup& target) {
  IntMatrix m(target.ambient_dim(), source.ambient_dim());
  for (std::size_t i = 0; i < target.ambient_dim(); ++i) {
    const Integer& ti = target.moduli()[i];
    for (std::size_t j = 0; j < source.ambient_dim(); ++j) {
      const Integer& sj = source.moduli()[j];
      if (ti == 0) {
        // a torsion generator must go to 0 in a free coordinate
        m(i, j) = sj == 0 ? Integer(rng_.uniform(-2, 2)) : Integer(0);
      } else {
        // entries a with sj * a = 0 mod ti: multiples of ti / gcd(ti, sj)
        const Integer step = sj == 0 ? Integer(1) : Integer(ti / gcd(ti, sj));
        const Integer choices = ti / step;
        m(i, j) = step * Integer(static_cast<unsigned long>(rng_.below(choices.get_ui())));
      }
    }
  }
  return AbHom(source, target, std::move(m));
}

AbHom SampleGenerator::isomorphism(const FinAbGroup& g) {
  const std::size_t n = g.ambient_dim();
  IntMatrix a = IntMatrix::identity(n);
  const auto& mod = g.moduli();
  const int steps = static_cast<int>(rng_.below(6)) + 1;
  for (int s = 0; s < steps; ++s) {
    if (n == 0) break;
    const std::size_t i = rng_.below(n);
    const std::size_t j = rng_.below(n);
    if (i != j && rng_.coin()) {
      // x_i += c * x_j is an endomorphism when m_j * c = 0 in coordinate i;
      // its inverse is the shear by -c, so it is an automorphism
      Integer step = 1;
      if (mod[i] == 0 && mod[j] != 0) continue;
      if (mod[i] != 0 && mod[j] != 0) step = mod[i] / gcd(mod[i], mod[j]);
      const Integer c = step * Integer(rng_.uniform(-2, 2));
      a.add_row_multiple(i, j, c);
    } else {
      // multiply coordinate i by a unit
      if (mod[i] == 0) {
        if (rng_.coin()) a.negate_row(i);
      } else {
        const long m = mod[i].get_si();
        long u = 1;
        for (int tries = 0; tries < 8; ++tries) {
          const long cand = rng_.uniform(1, m - 1 > 0 ? m - 1 : 1);
          if (std::gcd(cand, m) == 1) {
            u = cand;
            break;
          }
        }
        for (std::size_t c = 0; c < n; ++c) a(i, c) *= u;
      }
    }
  }
  const AbHom automorphism(g, g, std::move(a));
  const QuotientMap canon = quotient_group(g, std::span<const AbElement>());
  return compose(canon.projection, automorphism);
}

}  // namespace mwl
