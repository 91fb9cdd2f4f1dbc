#include "mwl/finabelian.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "mwl/errors.hpp"

namespace mwl {

bool AbElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& c) { return c == 0; });
}

std::string AbElement::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ',';
    out += coords[i].get_str();
  }
  return out + ")";
}

bool operator<(const AbElement& a, const AbElement& b) {
  if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const int c = cmp(a.coords[i], b.coords[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t AbElementHash::operator()(const AbElement& x) const noexcept {
  std::size_t seed = x.coords.size();
  for (const auto& c : x.coords) hash_combine(seed, hash_integer(c));
  return seed;
}

// --- FinAbGroup -------------------------------------------------------------

FinAbGroup::FinAbGroup(std::vector<Integer> moduli) : moduli_(std::move(moduli)) {
  std::vector<Integer> torsion;
  for (const auto& m : moduli_) {
    if (m < 0 || m == 1) {
      throw DomainError("FinAbGroup: modulus must be 0 (free) or >= 2, got " + m.get_str());
    }
    if (m == 0) {
      ++free_rank_;
    } else {
      torsion.push_back(m);
    }
  }
  if (torsion.empty()) return;
  IntMatrix d(torsion.size(), torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) d(i, i) = torsion[i];
  for (const auto& x : smith_normal_form(d).invariants()) {
    if (x != 1) invariant_factors_.push_back(x);
  }
}

FinAbGroup FinAbGroup::canonical(std::size_t free_rank, std::vector<Integer> invariant_factors) {
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (invariant_factors[i] < 2) throw DomainError("invariant factors must be >= 2");
    if (i + 1 < invariant_factors.size() &&
        !mpz_divisible_p(invariant_factors[i + 1].get_mpz_t(), invariant_factors[i].get_mpz_t())) {
      throw DomainError("invariant factors must form a divisibility chain");
    }
  }
  std::vector<Integer> moduli(free_rank, Integer(0));
  moduli.insert(moduli.end(), invariant_factors.begin(), invariant_factors.end());
  return FinAbGroup(std::move(moduli));
}

FinAbGroup FinAbGroup::free(std::size_t rank) { return FinAbGroup(std::vector<Integer>(rank, Integer(0))); }

FinAbGroup FinAbGroup::cyclic(const Integer& m) { return FinAbGroup(std::vector<Integer>{m}); }

bool FinAbGroup::is_canonical() const {
  std::vector<Integer> expected(free_rank_, Integer(0));
  expected.insert(expected.end(), invariant_factors_.begin(), invariant_factors_.end());
  return expected == moduli_;
}

std::optional<Integer> FinAbGroup::cardinality() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& m : invariant_factors_) n *= m;
  return n;
}

bool FinAbGroup::isomorphic_to(const FinAbGroup& other) const {
  return free_rank_ == other.free_rank_ && invariant_factors_ == other.invariant_factors_;
}

AbElement FinAbGroup::element(std::vector<Integer> coords) const {
  if (coords.size() != moduli_.size()) {
    throw DomainError("element has " + std::to_string(coords.size()) + " coordinates, group " + to_string() +
                      " needs " + std::to_string(moduli_.size()));
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (moduli_[i] != 0) coords[i] = mod_floor(coords[i], moduli_[i]);
  }
  return AbElement{std::move(coords)};
}

AbElement FinAbGroup::element(std::initializer_list<long> coords) const {
  std::vector<Integer> v;
  for (long c : coords) v.emplace_back(c);
  return element(std::move(v));
}

AbElement FinAbGroup::zero() const { return AbElement{std::vector<Integer>(moduli_.size(), Integer(0))}; }

AbElement FinAbGroup::add(const AbElement& x, const AbElement& y) const {
  std::vector<Integer> c(moduli_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords[i] + y.coords[i];
  return element(std::move(c));
}

AbElement FinAbGroup::sub(const AbElement& x, const AbElement& y) const {
  std::vector<Integer> c(moduli_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords[i] - y.coords[i];
  return element(std::move(c));
}

AbElement FinAbGroup::neg(const AbElement& x) const {
  std::vector<Integer> c(moduli_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -x.coords[i];
  return element(std::move(c));
}

AbElement FinAbGroup::scale(const Integer& k, const AbElement& x) const {
  std::vector<Integer> c(moduli_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * x.coords[i];
  return element(std::move(c));
}

AbElement FinAbGroup::basis(std::size_t i) const {
  AbElement e = zero();
  e.coords.at(i) = 1;
  return element(std::move(e.coords));
}

bool FinAbGroup::contains(const AbElement& x) const {
  if (x.coords.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] != 0 && (x.coords[i] < 0 || x.coords[i] >= moduli_[i])) return false;
  }
  return true;
}

void FinAbGroup::require(const AbElement& x) const {
  if (!contains(x)) throw DomainError("element " + x.to_string() + " does not lie in " + to_string());
}

void FinAbGroup::require(const AbSet& a) const {
  for (const auto& x : a) require(x);
}

std::string FinAbGroup::to_string() const {
  if (moduli_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out += " + ";
    out += moduli_[i] == 0 ? std::string("Z") : "Z/" + moduli_[i].get_str();
  }
  return out;
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Integer> m = a.moduli();
  m.insert(m.end(), b.moduli().begin(), b.moduli().end());
  return FinAbGroup(std::move(m));
}

// --- AbHom ------------------------------------------------------------------

AbHom::AbHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.ambient_dim() || matrix_.cols() != source_.ambient_dim()) {
    throw DomainError("AbHom: matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                      ", expected " + std::to_string(target_.ambient_dim()) + "x" +
                      std::to_string(source_.ambient_dim()));
  }
  const auto& sm = source_.moduli();
  const auto& tm = target_.moduli();
  for (std::size_t j = 0; j < sm.size(); ++j) {
    if (sm[j] == 0) continue;
    for (std::size_t i = 0; i < tm.size(); ++i) {
      const Integer image = sm[j] * matrix_(i, j);
      const bool ok = tm[i] == 0 ? image == 0 : mpz_divisible_p(image.get_mpz_t(), tm[i].get_mpz_t()) != 0;
      if (!ok) {
        throw DomainError("AbHom: source relation " + sm[j].get_str() + "*e" + std::to_string(j) +
                          " does not map into the target relations");
      }
    }
  }
  for (std::size_t i = 0; i < tm.size(); ++i) {
    if (tm[i] == 0) continue;
    for (std::size_t j = 0; j < sm.size(); ++j) matrix_(i, j) = mod_floor(matrix_(i, j), tm[i]);
  }
}

AbHom AbHom::identity(const FinAbGroup& g) { return AbHom(g, g, IntMatrix::identity(g.ambient_dim())); }

AbElement AbHom::apply(const AbElement& x) const {
  source_.require(x);
  return target_.element(matrix_.apply(x.coords));
}

AbSet AbHom::apply(const AbSet& a) const {
  std::vector<AbElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(apply(x));
  return AbSet(std::move(out));
}

AbHom compose(const AbHom& outer, const AbHom& inner) {
  if (!(inner.target() == outer.source())) throw DomainError("compose: groups do not match");
  return AbHom(inner.source(), outer.target(), outer.matrix() * inner.matrix());
}

// --- subgroups and quotients ------------------------------------------------

namespace {

// Columns of [gens | torsion relations of g]; the integer kernel of this
// matrix, restricted to the first gens.size() coordinates, is the lattice of
// relations among the generators.
IntMatrix relations_among(const FinAbGroup& g, std::span<const AbElement> gens) {
  const std::size_t dim = g.ambient_dim();
  const auto& moduli = g.moduli();
  std::size_t torsion = 0;
  for (const auto& m : moduli) torsion += m != 0;
  IntMatrix m(dim, gens.size() + torsion);
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = gens[j].coords[i];
  std::size_t col = gens.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (moduli[i] != 0) m(i, col++) = moduli[i];
  }
  const IntMatrix kernel = integer_kernel(m);
  IntMatrix rel(kernel.cols(), gens.size());
  for (std::size_t r = 0; r < kernel.cols(); ++r)
    for (std::size_t j = 0; j < gens.size(); ++j) rel(r, j) = kernel(j, r);
  return rel;
}

// Order for canonical presentations: free factors first, then torsion in
// the ascending divisibility chain produced by the Smith form.
std::vector<std::size_t> canonical_order(const std::vector<Integer>& diag) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] == 0) order.push_back(i);
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] > 1) order.push_back(i);
  return order;
}

}  // namespace

SubgroupEmbedding subgroup_generated(const FinAbGroup& g, std::span<const AbElement> gens) {
  if (gens.empty()) throw DomainError("subgroup_generated: generator set is empty");
  for (const auto& x : gens) g.require(x);

  const std::size_t k = gens.size();
  const IntMatrix rel = relations_among(g, gens);
  const SmithForm s = smith_normal_form(rel);

  std::vector<Integer> diag(k, Integer(0));
  const auto inv = s.invariants();
  for (std::size_t i = 0; i < inv.size(); ++i) diag[i] = inv[i];

  const auto order = canonical_order(diag);
  std::vector<Integer> moduli;
  IntMatrix incl(g.ambient_dim(), order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    const std::size_t i = order[c];
    moduli.push_back(diag[i]);
    // the i-th cyclic factor is generated by sum_j vinv(i, j) * gens[j]
    for (std::size_t r = 0; r < g.ambient_dim(); ++r) {
      Integer acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += s.right_inverse(i, j) * gens[j].coords[r];
      incl(r, c) = acc;
    }
  }
  FinAbGroup sub(std::move(moduli));
  return SubgroupEmbedding{sub, AbHom(sub, g, std::move(incl))};
}

SubgroupEmbedding subgroup_generated(const FinAbGroup& g, const AbSet& gens) {
  return subgroup_generated(g, std::span<const AbElement>(gens.elements()));
}

QuotientMap quotient_group(const FinAbGroup& g, std::span<const AbElement> gens) {
  for (const auto& x : gens) g.require(x);
  const std::size_t dim = g.ambient_dim();
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    if (g.moduli()[i] == 0) continue;
    std::vector<Integer> r(dim, Integer(0));
    r[i] = g.moduli()[i];
    rows.push_back(std::move(r));
  }
  for (const auto& x : gens) rows.push_back(x.coords);
  const SmithForm s = smith_normal_form(IntMatrix::from_rows(rows, dim));

  std::vector<Integer> diag(dim, Integer(0));
  const auto inv = s.invariants();
  for (std::size_t i = 0; i < inv.size(); ++i) diag[i] = inv[i];

  // Row vectors x transform as x -> x * right, so the i-th quotient
  // coordinate of x is the dot product with column i of right.
  const auto order = canonical_order(diag);
  std::vector<Integer> moduli;
  IntMatrix proj(order.size(), dim);
  for (std::size_t c = 0; c < order.size(); ++c) {
    const std::size_t i = order[c];
    moduli.push_back(diag[i]);
    for (std::size_t r = 0; r < dim; ++r) proj(c, r) = s.right(r, i);
  }
  FinAbGroup quot(std::move(moduli));
  return QuotientMap{quot, AbHom(g, quot, std::move(proj))};
}

QuotientMap quotient_group(const FinAbGroup& g, const AbSet& gens) {
  return quotient_group(g, std::span<const AbElement>(gens.elements()));
}

SubgroupEmbedding hom_kernel(const AbHom& h) {
  const FinAbGroup& src = h.source();
  const FinAbGroup& tgt = h.target();
  const std::size_t sdim = src.ambient_dim();
  std::size_t torsion = 0;
  for (const auto& m : tgt.moduli()) torsion += m != 0;

  // x in ker iff H x lies in the target relation lattice
  IntMatrix m(tgt.ambient_dim(), sdim + torsion);
  for (std::size_t i = 0; i < tgt.ambient_dim(); ++i)
    for (std::size_t j = 0; j < sdim; ++j) m(i, j) = h.matrix()(i, j);
  std::size_t col = sdim;
  for (std::size_t i = 0; i < tgt.ambient_dim(); ++i) {
    if (tgt.moduli()[i] != 0) m(i, col++) = tgt.moduli()[i];
  }
  const IntMatrix kernel = integer_kernel(m);
  std::vector<AbElement> gens;
  for (std::size_t c = 0; c < kernel.cols(); ++c) {
    std::vector<Integer> x(sdim);
    for (std::size_t j = 0; j < sdim; ++j) x[j] = kernel(j, c);
    gens.push_back(src.element(std::move(x)));
  }
  if (gens.empty()) gens.push_back(src.zero());
  return subgroup_generated(src, gens);
}

SubgroupEmbedding hom_image(const AbHom& h) {
  std::vector<AbElement> gens;
  for (std::size_t j = 0; j < h.source().ambient_dim(); ++j) gens.push_back(h.apply(h.source().basis(j)));
  if (gens.empty()) gens.push_back(h.target().zero());
  return subgroup_generated(h.target(), gens);
}

SubgroupEmbedding torsion_k(const FinAbGroup& g, const Integer& k) {
  if (k <= 0) throw DomainError("torsion_k: k must be positive");
  std::vector<AbElement> gens;
  for (std::size_t i = 0; i < g.ambient_dim(); ++i) {
    const Integer& m = g.moduli()[i];
    if (m == 0) continue;
    gens.push_back(g.scale(m / gcd(k, m), g.basis(i)));
  }
  if (gens.empty()) gens.push_back(g.zero());
  return subgroup_generated(g, gens);
}

std::vector<AbElement> enumerate_elements(const FinAbGroup& g, std::size_t limit) {
  const auto card = g.cardinality();
  if (!card) throw CapacityError("enumerate_elements: group " + g.to_string() + " is infinite");
  if (*card > limit) throw CapacityError("enumerate_elements: group " + g.to_string() + " exceeds the limit");
  std::vector<AbElement> out;
  std::vector<Integer> cur(g.ambient_dim(), Integer(0));
  const std::size_t n = card->get_ui();
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    out.push_back(AbElement{cur});
    for (std::size_t i = g.ambient_dim(); i-- > 0;) {
      if (++cur[i] < g.moduli()[i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

AbSet set_sum(const FinAbGroup& g, const AbSet& a, const AbSet& b) {
  std::unordered_set<AbElement, AbElementHash> seen;
  for (const auto& x : a)
    for (const auto& y : b) seen.insert(g.add(x, y));
  return AbSet(std::vector<AbElement>(seen.begin(), seen.end()));
}

AbSet set_difference(const FinAbGroup& g, const AbSet& a, const AbSet& b) {
  std::unordered_set<AbElement, AbElementHash> seen;
  for (const auto& x : a)
    for (const auto& y : b) seen.insert(g.sub(x, y));
  return AbSet(std::vector<AbElement>(seen.begin(), seen.end()));
}

AbSet set_with_zero(const FinAbGroup& g, const AbSet& a) {
  std::vector<AbElement> v = a.elements();
  v.push_back(g.zero());
  return AbSet(std::move(v));
}

AbSet set_product(const AbSet& a, const AbSet& b) {
  std::vector<AbElement> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      std::vector<Integer> c = x.coords;
      c.insert(c.end(), y.coords.begin(), y.coords.end());
      out.push_back(AbElement{std::move(c)});
    }
  return AbSet(std::move(out));
}

AbSet set_filter(const AbSet& a, const std::function<bool(const AbElement&)>& keep) {
  std::vector<AbElement> out;
  for (const auto& x : a)
    if (keep(x)) out.push_back(x);
  return AbSet(std::move(out));
}

std::string set_to_string(const AbSet& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : a) {
    if (!first) out += ", ";
    first = false;
    out += x.to_string();
  }
  return out + "}";
}

}  // namespace mwl
