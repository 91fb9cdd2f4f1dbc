#include "mwl/groupring.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "mwl/errors.hpp"

namespace mwl {

// --- GRElement --------------------------------------------------------------

GRElement::GRElement(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const Term& t) { return t.coeff.is_zero(); });
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.pos < b.pos; });
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].pos == terms_[i - 1].pos) throw DomainError("GRElement: repeated position " + terms_[i].pos.to_string());
  }
}

const AbElement* GRElement::at(const GroupElem& pos) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), pos,
                                   [](const Term& t, const GroupElem& p) { return t.pos < p; });
  return it != terms_.end() && it->pos == pos ? &it->coeff : nullptr;
}

std::string GRElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += t.coeff.to_string() + "@" + t.pos.to_string();
  }
  return out;
}

bool operator<(const GRElement& a, const GRElement& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].pos < b.terms_[i].pos) return true;
    if (b.terms_[i].pos < a.terms_[i].pos) return false;
    if (a.terms_[i].coeff < b.terms_[i].coeff) return true;
    if (b.terms_[i].coeff < a.terms_[i].coeff) return false;
  }
  return a.terms_.size() < b.terms_.size();
}

std::size_t GRElementHash::operator()(const GRElement& x) const noexcept {
  std::size_t seed = x.terms().size();
  const AbElementHash h;
  for (const auto& t : x.terms()) {
    hash_combine(seed, h(t.pos));
    hash_combine(seed, h(t.coeff));
  }
  return seed;
}

std::string SubmodulePresentation::name() const {
  return closure == Closure::CoefficientSubgroup ? "coeff_subgroup" : "principal_z";
}

// --- ShiftModule ------------------------------------------------------------

ShiftModule::ShiftModule(GroupPresentation gamma, FinAbGroup coeff, std::optional<AbHom> action,
                         std::optional<SubmodulePresentation> quotient)
    : gamma_(std::move(gamma)), coeff_(std::move(coeff)), action_(std::move(action)), quotient_(std::move(quotient)) {
  if (action_) {
    if (!(action_->source() == gamma_)) throw DomainError("action hom must start at the acting group");
    support_ = action_->target();
  } else {
    support_ = gamma_;
  }
  carrier_ = coeff_;
  if (!quotient_) return;

  if (quotient_->closure == SubmodulePresentation::Closure::CoefficientSubgroup) {
    const QuotientMap q = quotient_group(coeff_, std::span<const AbElement>(quotient_->coeff_generators));
    carrier_ = q.group;
    coeff_projection_ = q.projection;
    return;
  }

  if (support_.free_rank() != 1 || support_.ambient_dim() != 1) {
    throw ConfigError("principal_gamma_z: normal forms need the module to live on Z, got " + support_.to_string());
  }
  const auto& mods = coeff_.moduli();
  if (mods.empty() || std::any_of(mods.begin(), mods.end(), [&](const Integer& m) { return m != mods[0]; }) ||
      mods[0] == 0 || !mpz_probab_prime_p(mods[0].get_mpz_t(), 30) || mods[0] > Integer(1L << 30)) {
    throw ConfigError("principal_gamma_z: coefficients must be (Z/p)^k for a prime p, got " + coeff_.to_string());
  }
  std::vector<LaurentVector> gens;
  for (const auto& g : quotient_->generators) {
    for (const auto& t : g.terms()) {
      coeff_.require(t.coeff);
      support_.require(t.pos);
    }
    gens.push_back(to_laurent(g));
  }
  reducer_ = std::make_shared<const HermiteReducer>(mods[0].get_si(), mods.size(), gens);
}

GroupElem ShiftModule::act(const GroupElem& s) const {
  gamma_.require(s);
  return action_ ? action_->apply(s) : s;
}

LaurentVector ShiftModule::to_laurent(const GRElement& x) const {
  const long p = coeff_.moduli()[0].get_si();
  LaurentVector v(coeff_.ambient_dim(), LaurentPoly(p));
  for (const auto& t : x.terms()) {
    const long e = t.pos.coords[0].get_si();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (t.coeff.coords[j] != 0) v[j] = v[j] + LaurentPoly::monomial(p, t.coeff.coords[j].get_si(), e);
    }
  }
  return v;
}

GRElement ShiftModule::from_laurent(const LaurentVector& v) const {
  std::map<long, std::vector<Integer>> by_pos;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    for (long e = v[j].low(); e <= v[j].high(); ++e) {
      const long c = v[j].coeff(e);
      if (c == 0) continue;
      auto& slot = by_pos.try_emplace(e, std::vector<Integer>(v.size(), Integer(0))).first->second;
      slot[j] = c;
    }
  }
  std::vector<Term> terms;
  for (auto& [e, c] : by_pos) terms.push_back({AbElement{{Integer(e)}}, AbElement{std::move(c)}});
  return GRElement(std::move(terms));
}

GRElement ShiftModule::canonical(const GRElement& ambient) const {
  for (const auto& t : ambient.terms()) {
    support_.require(t.pos);
    coeff_.require(t.coeff);
  }
  if (reducer_) return from_laurent(reducer_->reduce(to_laurent(ambient)));
  if (!coeff_projection_) return ambient;
  std::vector<Term> terms;
  for (const auto& t : ambient.terms()) terms.push_back({t.pos, coeff_projection_->apply(t.coeff)});
  return GRElement(std::move(terms));
}

GRElement ShiftModule::element(const std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>>& terms) const {
  // sum coefficients at repeated positions
  std::map<GroupElem, AbElement> acc;
  for (const auto& [pos, c] : terms) {
    const GroupElem p = support_.element(pos);
    const AbElement v = coeff_.element(c);
    auto it = acc.find(p);
    if (it == acc.end()) {
      acc.emplace(p, v);
    } else {
      it->second = coeff_.add(it->second, v);
    }
  }
  std::vector<Term> out;
  for (auto& [p, c] : acc) out.push_back({p, c});
  return canonical(GRElement(std::move(out)));
}

GRElement ShiftModule::delta(const GroupElem& pos, const AbElement& coeff) const {
  return canonical(GRElement({Term{pos, coeff}}));
}

void ShiftModule::require(const GRElement& x) const {
  for (const auto& t : x.terms()) {
    support_.require(t.pos);
    carrier_.require(t.coeff);
  }
  if (reducer_ && !(canonical(x) == x)) throw DomainError("element " + x.to_string() + " is not in normal form");
}

GRElement ShiftModule::combine(const GRElement& x, const GRElement& y, bool subtract) const {
  std::vector<Term> out;
  out.reserve(x.terms().size() + y.terms().size());
  auto i = x.terms().begin(), j = y.terms().begin();
  while (i != x.terms().end() || j != y.terms().end()) {
    if (j == y.terms().end() || (i != x.terms().end() && i->pos < j->pos)) {
      out.push_back(*i++);
    } else if (i == x.terms().end() || j->pos < i->pos) {
      out.push_back({j->pos, subtract ? carrier_.neg(j->coeff) : j->coeff});
      ++j;
    } else {
      AbElement c = subtract ? carrier_.sub(i->coeff, j->coeff) : carrier_.add(i->coeff, j->coeff);
      if (!c.is_zero()) out.push_back({i->pos, std::move(c)});
      ++i;
      ++j;
    }
  }
  GRElement r(std::move(out));
  return reducer_ ? canonical(r) : r;
}

GRElement ShiftModule::add(const GRElement& x, const GRElement& y) const { return combine(x, y, false); }

GRElement ShiftModule::sub(const GRElement& x, const GRElement& y) const { return combine(x, y, true); }

GRElement ShiftModule::neg(const GRElement& x) const { return combine(GRElement(), x, true); }

GRElement ShiftModule::scale(const Integer& k, const GRElement& x) const {
  std::vector<Term> out;
  for (const auto& t : x.terms()) out.push_back({t.pos, carrier_.scale(k, t.coeff)});
  GRElement r(std::move(out));
  return reducer_ ? canonical(r) : r;
}

GRElement ShiftModule::shift_support(const GRElement& x, const GroupElem& by) const {
  std::vector<Term> out;
  out.reserve(x.terms().size());
  for (const auto& t : x.terms()) out.push_back({support_.add(t.pos, by), t.coeff});
  GRElement r(std::move(out));
  // translation commutes with the submodule, but the Hermite representative
  // window is not translation invariant
  return reducer_ ? canonical(r) : r;
}

GRElement ShiftModule::translate(const GroupElem& s, const GRElement& x) const { return shift_support(x, act(s)); }

GRElement ShiftModule::translate_inverse(const GroupElem& s, const GRElement& x) const {
  return shift_support(x, support_.neg(act(s)));
}

std::optional<Integer> ShiftModule::cardinality() const {
  if (reducer_) return reducer_->quotient_cardinality();
  if (carrier_.is_trivial()) return Integer(1);
  return std::nullopt;
}

std::string ShiftModule::to_string() const {
  std::string out = "(" + carrier_.to_string() + ")[" + support_.to_string() + "]";
  if (action_) out += " acted on by " + gamma_.to_string();
  if (reducer_) out += " mod " + std::to_string(quotient_->generators.size()) + " generator(s)";
  return out;
}

bool submodule_contains(const ShiftModule& m, const SubmodulePresentation& n, const GRElement& x) {
  if (m.quotient()) throw ConfigError("submodule membership is only available inside a module without quotient");
  m.require(x);
  if (n.closure == SubmodulePresentation::Closure::CoefficientSubgroup) {
    const QuotientMap q = quotient_group(m.coeff(), std::span<const AbElement>(n.coeff_generators));
    return std::all_of(x.terms().begin(), x.terms().end(),
                       [&](const Term& t) { return q.projection.apply(t.coeff).is_zero(); });
  }
  const ShiftModule quot(m.gamma(), m.coeff(), m.action(), n);
  return quot.canonical(x).is_zero();
}

// --- set arithmetic ---------------------------------------------------------

GRSet gr_translate(const ShiftModule& m, const GroupElem& s, const GRSet& a) {
  std::vector<GRElement> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(m.translate(s, x));
  return GRSet(std::move(out));
}

GRSet minkowski_sum(const ShiftModule& m, const GRSet& a, const GRSet& b) {
  for (const auto& x : a) m.require(x);
  for (const auto& x : b) m.require(x);
  std::unordered_set<GRElement, GRElementHash> seen;
  for (const auto& x : a)
    for (const auto& y : b) seen.insert(m.add(x, y));
  return GRSet(std::vector<GRElement>(seen.begin(), seen.end()));
}

GRSet gr_negate(const ShiftModule& m, const GRSet& a) {
  std::vector<GRElement> out;
  for (const auto& x : a) out.push_back(m.neg(x));
  return GRSet(std::move(out));
}

GRSet gr_with_zero(const GRSet& a) {
  std::vector<GRElement> v = a.elements();
  v.emplace_back();
  return GRSet(std::move(v));
}

namespace {

// Plain carriers add position by position, so every partial sum fits in a
// fixed array indexed by (position, carrier coordinate) over the window the
// translates can reach.  Returns nullopt when some coordinate might not fit
// in a long.
struct DenseKeyHash {
  std::size_t operator()(const std::vector<long>& v) const noexcept {
    std::size_t seed = v.size();
    for (long x : v) hash_combine(seed, std::hash<long>{}(x));
    return seed;
  }
};

std::optional<GRSet> orbit_sum_dense(const ShiftModule& m, const std::vector<std::vector<GRElement>>& shifted,
                                     std::size_t cap) {
  const FinAbGroup& c = m.carrier_coeff();
  const std::size_t k = c.ambient_dim();
  std::map<GroupElem, std::size_t> index;
  for (const auto& row : shifted)
    for (const auto& x : row)
      for (const auto& t : x.terms()) index.emplace(t.pos, 0);
  std::size_t next_index = 0;
  for (auto& [pos, i] : index) i = next_index++;

  // free coordinates grow with the number of translates
  const Integer limit = Integer(1) << 60;
  std::vector<Integer> bound(k);
  for (const auto& row : shifted) {
    std::vector<Integer> row_max(k);
    for (const auto& x : row)
      for (const auto& t : x.terms())
        for (std::size_t j = 0; j < k; ++j) row_max[j] = std::max<Integer>(row_max[j], abs(t.coeff.coords[j]));
    for (std::size_t j = 0; j < k; ++j) bound[j] += row_max[j];
  }
  std::vector<long> mod(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (bound[j] >= limit || c.moduli()[j] >= limit) return std::nullopt;
    mod[j] = c.moduli()[j].get_si();
  }

  const std::size_t width = index.size() * k;
  const auto encode = [&](const GRElement& x) {
    std::vector<long> v(width, 0);
    for (const auto& t : x.terms())
      for (std::size_t j = 0; j < k; ++j) v[index.at(t.pos) * k + j] = t.coeff.coords[j].get_si();
    return v;
  };

  std::unordered_set<std::vector<long>, DenseKeyHash> acc;
  for (const auto& x : shifted[0]) acc.insert(encode(x));
  for (std::size_t i = 1; i < shifted.size(); ++i) {
    std::vector<std::vector<long>> add;
    for (const auto& y : shifted[i]) add.push_back(encode(y));
    std::unordered_set<std::vector<long>, DenseKeyHash> next;
    next.reserve(std::min(cap, acc.size() * add.size()));
    std::vector<long> sum(width);
    for (const auto& x : acc)
      for (const auto& y : add) {
        for (std::size_t q = 0; q < width; ++q) {
          long v = x[q] + y[q];
          const long md = mod[q % k];
          if (md != 0 && v >= md) v -= md;
          sum[q] = v;
        }
        next.insert(sum);
        if (next.size() > cap) {
          throw CapacityError("orbit_sum: more than " + std::to_string(cap) + " elements after " + std::to_string(i + 1) +
                              " translates");
        }
      }
    acc = std::move(next);
  }

  std::vector<GroupElem> positions(index.size());
  for (const auto& [pos, i] : index) positions[i] = pos;
  std::vector<GRElement> out;
  out.reserve(acc.size());
  for (const auto& v : acc) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < k; ++j) nonzero = nonzero || v[i * k + j] != 0;
      if (!nonzero) continue;
      std::vector<Integer> coords(k);
      for (std::size_t j = 0; j < k; ++j) coords[j] = v[i * k + j];
      terms.push_back({positions[i], AbElement{std::move(coords)}});
    }
    out.emplace_back(std::move(terms));
  }
  return GRSet(std::move(out));
}

}  // namespace

GRSet orbit_sum(const ShiftModule& m, const GRSet& a, const std::vector<GroupElem>& f, std::size_t cap) {
  if (a.empty() || f.empty()) throw DomainError("orbit_sum: A and F must be nonempty");
  for (const auto& x : a) m.require(x);
  std::vector<std::vector<GRElement>> shifted(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& x : a) shifted[i].push_back(m.translate_inverse(f[i], x));
  if (m.plain_carrier()) {
    if (auto dense = orbit_sum_dense(m, shifted, cap)) return std::move(*dense);
  }

  std::unordered_set<GRElement, GRElementHash> acc(shifted[0].begin(), shifted[0].end());
  for (std::size_t i = 1; i < f.size(); ++i) {
    std::unordered_set<GRElement, GRElementHash> next;
    next.reserve(std::min(cap, acc.size() * shifted[i].size()));
    for (const auto& x : acc)
      for (const auto& y : shifted[i]) {
        next.insert(m.add(x, y));
        if (next.size() > cap) {
          throw CapacityError("orbit_sum: more than " + std::to_string(cap) + " elements after " + std::to_string(i + 1) +
                              " translates");
        }
      }
    acc = std::move(next);
  }
  return GRSet(std::vector<GRElement>(acc.begin(), acc.end()));
}

std::vector<GRElement> orbit_sum_generators(const ShiftModule& m, const GRSet& a, const std::vector<GroupElem>& f) {
  if (a.empty() || f.empty()) throw DomainError("orbit_sum_generators: A and F must be nonempty");
  const GRElement& a0 = a[0];
  GRElement x0;
  std::vector<GRElement> gens;
  for (const auto& s : f) {
    x0 = m.add(x0, m.translate_inverse(s, a0));
    for (std::size_t i = 1; i < a.size(); ++i) gens.push_back(m.translate_inverse(s, m.sub(a[i], a0)));
  }
  gens.push_back(x0);
  return gens;
}

GRElement submodule_normal_form(const ShiftModule& m, const GRElement& x) {
  if (!m.has_principal_quotient()) {
    throw ConfigError("submodule_normal_form: module has no principal_gamma_z quotient");
  }
  return m.canonical(x);
}

GRElement CoeffQuotient::project(const GRElement& x) const {
  std::vector<Term> out;
  for (const auto& t : x.terms()) out.push_back({t.pos, coeff_projection.apply(t.coeff)});
  return GRElement(std::move(out));
}

CoeffQuotient coeff_quotient(const ShiftModule& m, const std::vector<AbElement>& d) {
  if (m.quotient()) throw ConfigError("coeff_quotient: module already carries a quotient");
  const QuotientMap q = quotient_group(m.coeff(), std::span<const AbElement>(d));
  return {ShiftModule(m.gamma(), q.group, m.action()), q.projection};
}

FlatSet flatten(const ShiftModule& m, const std::vector<GRElement>& elems) {
  if (!m.plain_carrier()) throw ConfigError("flatten: principal quotient modules have no coordinate flattening");
  std::vector<GroupElem> positions;
  for (const auto& x : elems)
    for (const auto& t : x.terms()) positions.push_back(t.pos);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

  const FinAbGroup& c = m.carrier_coeff();
  const std::size_t w = c.ambient_dim();
  std::vector<Integer> moduli;
  for (std::size_t i = 0; i < positions.size(); ++i) moduli.insert(moduli.end(), c.moduli().begin(), c.moduli().end());
  FlatSet out{FinAbGroup(std::move(moduli)), {}};

  std::vector<AbElement> flat;
  for (const auto& x : elems) {
    std::vector<Integer> coords(positions.size() * w, Integer(0));
    for (const auto& t : x.terms()) {
      const auto idx = static_cast<std::size_t>(std::lower_bound(positions.begin(), positions.end(), t.pos) - positions.begin());
      for (std::size_t j = 0; j < w; ++j) coords[idx * w + j] = t.coeff.coords[j];
    }
    flat.push_back(AbElement{std::move(coords)});
  }
  out.set = AbSet(std::move(flat));
  return out;
}

}  // namespace mwl
