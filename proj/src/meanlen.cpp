#include "mwl/meanlen.hpp"

#include <cmath>
#include <sstream>

#include "mwl/errors.hpp"
#include "mwl/orbit_count.hpp"
#include "mwl/parallel.hpp"

namespace mwl {

// --- ExactRatio -------------------------------------------------------------

ExactRatio ExactRatio::of(const LengthValue& v, const Integer& den) {
  if (den <= 0) throw DomainError("ratio denominator must be positive");
  switch (v.kind()) {
    case Kind::LogOfCount: {
      ExactRatio r(Kind::LogOfCount, v.count(), den, Rational(0));
      r.normalize();
      return r;
    }
    case Kind::Rational: {
      Rational q = v.value() / Rational(den);
      q.canonicalize();
      return ExactRatio(Kind::Rational, 1, 1, q);
    }
    case Kind::Infinity:
      break;
  }
  return ExactRatio(Kind::Infinity, 1, 1, Rational(0));
}

ExactRatio ExactRatio::zero(Kind kind) {
  if (kind == Kind::Infinity) throw DomainError("infinity has no zero");
  return ExactRatio(kind, 1, 1, Rational(0));
}

void ExactRatio::normalize() {
  if (count_ == 1) {
    den_ = 1;
    return;
  }
  // largest g | den with count a perfect g-th power
  for (Integer g = den_; g > 1; --g) {
    if (!mpz_divisible_p(den_.get_mpz_t(), g.get_mpz_t())) continue;
    Integer root;
    if (mpz_root(root.get_mpz_t(), count_.get_mpz_t(), g.get_ui()) != 0) {
      count_ = root;
      den_ /= g;
      return;
    }
  }
}

bool ExactRatio::is_zero() const {
  switch (kind_) {
    case Kind::LogOfCount:
      return count_ == 1;
    case Kind::Rational:
      return value_ == 0;
    case Kind::Infinity:
      break;
  }
  return false;
}

namespace {

double log_approx(const Integer& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

double ExactRatio::approx() const {
  switch (kind_) {
    case Kind::LogOfCount:
      return log_approx(count_) / den_.get_d();
    case Kind::Rational:
      return value_.get_d();
    case Kind::Infinity:
      break;
  }
  return INFINITY;
}

std::string ExactRatio::to_string() const {
  switch (kind_) {
    case Kind::LogOfCount:
      if (count_ == 1) return "0";
      return den_ == 1 ? "log " + count_.get_str() : "log " + count_.get_str() + " / " + den_.get_str();
    case Kind::Rational:
      return mwl::to_string(value_);
    case Kind::Infinity:
      break;
  }
  return "inf";
}

ExactRatio operator+(const ExactRatio& a, const ExactRatio& b) {
  using K = ExactRatio::Kind;
  if (a.kind_ == K::Infinity || b.kind_ == K::Infinity) return ExactRatio(K::Infinity, 1, 1, Rational(0));
  if (a.kind_ != b.kind_) throw DomainError("cannot add " + a.to_string() + " and " + b.to_string());
  if (a.kind_ == K::Rational) {
    Rational q = a.value_ + b.value_;
    q.canonicalize();
    return ExactRatio(K::Rational, 1, 1, q);
  }
  const Integer g = gcd(a.den_, b.den_);
  const Integer l = lcm(a.den_, b.den_);
  const Integer ea = b.den_ / g;
  const Integer eb = a.den_ / g;
  ExactRatio r(K::LogOfCount, pow(a.count_, ea.get_ui()) * pow(b.count_, eb.get_ui()), l, Rational(0));
  r.normalize();
  return r;
}

bool operator==(const ExactRatio& a, const ExactRatio& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b) {
  using K = ExactRatio::Kind;
  if (a.kind_ == K::Infinity || b.kind_ == K::Infinity) {
    return (a.kind_ == K::Infinity) <=> (b.kind_ == K::Infinity);
  }
  if (a.kind_ != b.kind_) throw DomainError("cannot compare " + a.to_string() + " and " + b.to_string());
  if (a.kind_ == K::Rational) return cmp(a.value_, b.value_) <=> 0;
  // log(ca)/da vs log(cb)/db  <=>  ca^db vs cb^da; the float estimate only
  // short-circuits clear cases
  const double x = log_approx(a.count_) * b.den_.get_d();
  const double y = log_approx(b.count_) * a.den_.get_d();
  if (std::abs(x - y) > 1e-6 * (1.0 + std::abs(x) + std::abs(y))) return x < y ? std::strong_ordering::less
                                                                                 : std::strong_ordering::greater;
  const Integer lhs = pow(a.count_, b.den_.get_ui());
  const Integer rhs = pow(b.count_, a.den_.get_ui());
  return cmp(lhs, rhs) <=> 0;
}

// --- FolnerSequence ---------------------------------------------------------

FolnerSequence::FolnerSequence(GroupPresentation gamma, unsigned n_max) : gamma_(std::move(gamma)), n_max_(n_max) {
  if (n_max_ == 0) throw DomainError("Følner sequence needs n_max >= 1");
}

std::vector<GroupElem> FolnerSequence::box(unsigned n) const {
  if (n == 0) throw DomainError("box index must be positive");
  const auto& moduli = gamma_.moduli();
  std::vector<unsigned long> bound(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) bound[i] = moduli[i] == 0 ? n : moduli[i].get_ui();
  std::vector<GroupElem> out;
  std::vector<unsigned long> idx(moduli.size(), 0);
  for (;;) {
    std::vector<Integer> coords(idx.begin(), idx.end());
    out.push_back(gamma_.element(std::move(coords)));
    std::size_t i = idx.size();
    while (i > 0) {
      --i;
      if (++idx[i] < bound[i]) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (idx.empty()) return out;
  }
}

Integer FolnerSequence::box_size(unsigned n) const {
  Integer size = 1;
  for (const auto& m : gamma_.moduli()) size *= m == 0 ? Integer(n) : m;
  return size;
}

unsigned FolnerSequence::default_n_max(const GroupPresentation& gamma, std::size_t set_size) {
  const FolnerSequence probe(gamma, 12);
  if (set_size <= 1) return 12;
  for (unsigned n = 12; n > 1; --n) {
    const Integer size = probe.box_size(n);
    if (size > 64) continue;
    if (pow(Integer(static_cast<unsigned long>(set_size)), size.get_ui()) <= 1000000) return n;
  }
  return 1;
}

// --- invariance -------------------------------------------------------------

InvarianceResult is_invariant(const GroupPresentation& gamma, const std::vector<GroupElem>& f,
                              const std::vector<GroupElem>& k, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw DomainError("invariance parameter must lie in (0, 1]");
  for (const auto& x : f) gamma.require(x);
  for (const auto& x : k) gamma.require(x);
  const AbSet fs(f);
  InvarianceResult r;
  for (const auto& s : fs) {
    bool inside = true;
    for (const auto& x : k) {
      if (!fs.contains(gamma.add(x, s))) {
        inside = false;
        break;
      }
    }
    r.count += inside;
  }
  r.invariant = Rational(static_cast<unsigned long>(r.count)) >=
                (1 - delta) * Rational(static_cast<unsigned long>(fs.size()));
  return r;
}

// --- ratio tables -----------------------------------------------------------

std::string limit_name(MeanEstimate::Limit l) {
  switch (l) {
    case MeanEstimate::Limit::None:
      return "none";
    case MeanEstimate::Limit::ConstantRatios:
      return "constant_ratios";
    case MeanEstimate::Limit::FiniteModule:
      return "finite_module";
  }
  return "";
}

LengthValue orbit_value(const ShiftModule& m, const GRSet& a, const WeakLengthSpec& spec,
                        const std::vector<GroupElem>& f, std::string* method) {
  if (a.empty()) throw DomainError("weak lengths need a nonempty set");
  for (const auto& x : a) m.require(x);
  const bool counting = spec.kind == WeakLengthSpec::Kind::LogCard || spec.kind == WeakLengthSpec::Kind::TorsLog;
  if (counting) {
    if (spec.k <= 0) throw DomainError("torsion order must be positive");
    std::optional<Integer> k;
    if (spec.kind == WeakLengthSpec::Kind::TorsLog) k = spec.k;
    Integer count = 0;
    bool counted = false;
    if (orbit_count_applicable(m)) {
      try {
        count = count_orbit_sum(m, a, f, k);
        counted = true;
        if (method) *method = "automaton";
      } catch (const CapacityError&) {
      }
    }
    if (!counted) {
      const GRSet sum = orbit_sum(m, a, f);
      if (k) {
        for (const auto& x : sum) count += m.scale(*k, x).is_zero();
      } else {
        count = static_cast<unsigned long>(sum.size());
      }
      if (method) *method = "enumeration";
    }
    if (count == 0) {
      throw DomainError(spec.name() + " undefined: no element of the orbit sum is killed by " + spec.k.get_str());
    }
    return LengthValue::log_of(count);
  }
  if (m.has_principal_quotient()) {
    throw ConfigError("capability missing: " + spec.name() +
                      " on principal_z quotient modules (subgroups of the quotient are not computed)");
  }
  const FlatSet flat = flatten(m, orbit_sum_generators(m, a, f));
  if (method) *method = "generators";
  return eval_weak_length(spec, flat.group, flat.set);
}

namespace {

struct RowSlot {
  std::optional<RatioRow> row;
  std::string method;
  std::string error;
};

SubadditivityCheck fekete_check(const std::vector<RatioRow>& rows) {
  SubadditivityCheck c;
  c.applicable = true;
  const unsigned last = rows.empty() ? 0 : rows.back().n;
  for (unsigned n = 1; n <= last; ++n)
    for (unsigned k = n; n + k <= last; ++k) {
      ++c.pairs_checked;
      if (!c.violation && rows[n + k - 1].value > rows[n - 1].value + rows[k - 1].value) c.violation = {n, k};
    }
  return c;
}

SubadditivityCheck doubling_check(const std::vector<RatioRow>& rows) {
  SubadditivityCheck c;
  c.applicable = true;
  for (unsigned n = 1; 2 * n <= rows.size(); ++n) {
    ++c.pairs_checked;
    if (!c.violation && rows[2 * n - 1].ratio > rows[n - 1].ratio) c.violation = {n, 2 * n};
  }
  return c;
}

}  // namespace

MeanEstimate ratio_sequence(const ShiftModule& m, const GRSet& a, const WeakLengthSpec& spec,
                            const FolnerSequence& seq) {
  if (!(seq.gamma() == m.gamma())) throw DomainError("Følner sequence lives in a different group");
  if (a.empty()) throw DomainError("weak lengths need a nonempty set");
  for (const auto& x : a) m.require(x);

  std::vector<RowSlot> slots(seq.n_max());
  parallel_for(slots.size(), [&](std::size_t i) {
    const unsigned n = static_cast<unsigned>(i + 1);
    try {
      RatioRow row;
      row.n = n;
      row.box_size = seq.box_size(n);
      row.value = orbit_value(m, a, spec, seq.box(n), &slots[i].method);
      row.ratio = ExactRatio::of(row.value, row.box_size);
      slots[i].row = std::move(row);
    } catch (const CapacityError& e) {
      slots[i].error = e.what();
    }
  });

  MeanEstimate est;
  for (auto& s : slots) {
    if (!s.row) {
      est.truncated = true;
      est.truncation_reason = "n = " + std::to_string(est.rows.size() + 1) + ": " + s.error;
      break;
    }
    if (est.method.empty()) {
      est.method = s.method;
    } else if (est.method.find(s.method) == std::string::npos) {
      est.method += "+" + s.method;
    }
    est.rows.push_back(std::move(*s.row));
  }

  est.zero_in_a = a.contains(m.zero());
  est.symmetric_a = gr_negate(m, a) == a;
  est.strongly_subadditive = spec.is_length_induced() && est.zero_in_a && est.symmetric_a;
  for (const auto& r : est.rows) {
    if (!est.running_inf || r.ratio < *est.running_inf) est.running_inf = r.ratio;
  }
  if (est.rows.size() >= 2) {
    est.constant_exact = true;
    for (const auto& r : est.rows) est.constant_exact = est.constant_exact && r.ratio == est.rows.front().ratio;
  }
  if (est.zero_in_a && m.gamma().free_rank() == 1) est.fekete = fekete_check(est.rows);
  if (est.strongly_subadditive) est.doubling = doubling_check(est.rows);

  // ℓ(A^[F]) is bounded on a finite module while |F_n| grows without bound
  est.module_cardinality = m.cardinality();
  if (est.module_cardinality && m.gamma().free_rank() >= 1) {
    est.limit = MeanEstimate::Limit::FiniteModule;
    est.limit_value = ExactRatio::zero(spec.value_kind());
  } else if (est.constant_exact && est.zero_in_a) {
    est.limit = MeanEstimate::Limit::ConstantRatios;
    est.limit_value = est.rows.front().ratio;
  }
  return est;
}

MeanBound mean_lower_bound(const ShiftModule& m, const std::vector<GRSet>& witnesses, const WeakLengthSpec& spec,
                           const FolnerSequence& seq) {
  MeanBound b;
  b.lower_bound = ExactRatio::zero(spec.value_kind());
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    b.estimates.push_back(ratio_sequence(m, witnesses[i], spec, seq));
    const auto& lv = b.estimates.back().limit_value;
    if (!lv) continue;
    if (!b.certified || *lv > b.lower_bound) {
      b.lower_bound = *lv;
      b.best_witness = i;
    }
    b.certified = true;
  }
  return b;
}

// --- addition formula -------------------------------------------------------

std::string verdict_name(AdditionReport::Verdict v) {
  switch (v) {
    case AdditionReport::Verdict::ExactEqual:
      return "EXACT-EQUAL";
    case AdditionReport::Verdict::UnequalOnWitnesses:
      return "UNEQUAL-ON-WITNESSES";
    case AdditionReport::Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "";
}

AdditionReport addition_report(const ShiftModule& m2, const SubmodulePresentation& n1, const std::vector<GRSet>& w1,
                               const std::vector<GRSet>& w2, const std::vector<GRSet>& wq, const WeakLengthSpec& spec,
                               std::optional<unsigned> n_max) {
  if (m2.quotient()) throw ConfigError("capability missing: addition harness on a module that is already a quotient");
  const ShiftModule q(m2.gamma(), m2.coeff(), m2.action(), n1);

  for (std::size_t i = 0; i < w1.size(); ++i)
    for (const auto& x : w1[i]) {
      m2.require(x);
      if (!submodule_contains(m2, n1, x)) {
        throw DomainError("submodule witness " + std::to_string(i) + " has element " + x.to_string() +
                          " outside the submodule");
      }
    }
  std::vector<GRSet> wq_canon;
  for (const auto& set : wq) {
    std::vector<GRElement> elems;
    for (const auto& x : set) {
      m2.require(x);
      elems.push_back(q.canonical(x));
    }
    wq_canon.emplace_back(std::move(elems));
  }

  std::size_t largest = 1;
  for (const std::vector<GRSet>* list : std::initializer_list<const std::vector<GRSet>*>{&w1, &w2, &wq_canon})
    for (const auto& s : *list) largest = std::max(largest, s.size());
  const FolnerSequence seq(m2.gamma(), n_max ? *n_max : FolnerSequence::default_n_max(m2.gamma(), largest));

  AdditionReport r;
  r.m1 = mean_lower_bound(m2, w1, spec, seq);
  r.m2 = mean_lower_bound(m2, w2, spec, seq);
  r.quotient = mean_lower_bound(q, wq_canon, spec, seq);
  r.quotient_cardinality = q.cardinality();

  if (r.m1.certified && r.m2.certified && r.quotient.certified) {
    r.verdict = r.m2.lower_bound == r.m1.lower_bound + r.quotient.lower_bound
                    ? AdditionReport::Verdict::ExactEqual
                    : AdditionReport::Verdict::UnequalOnWitnesses;
  } else {
    r.note = "some witness limit is not certified";
  }

  // ℓ((B + C)^[F]) ≥ ℓ(π(C)^[F]) + ℓ(B^[F]) for B ⊆ M₁, C ⊆ M₂ in F⁰
  for (std::size_t i = 0; i < w1.size(); ++i)
    for (std::size_t j = 0; j < wq.size(); ++j) {
      if (!w1[i].contains(m2.zero()) || !wq_canon[j].contains(q.zero())) continue;
      const GRSet sum = minkowski_sum(m2, w1[i], wq[j]);
      const auto& rb = r.m1.estimates[i].rows;
      const auto& rc = r.quotient.estimates[j].rows;
      const std::size_t rows = std::min(rb.size(), rc.size());
      std::vector<std::optional<EasyDirectionRow>> out(rows);
      parallel_for(rows, [&](std::size_t t) {
        try {
          EasyDirectionRow row;
          row.b_witness = i;
          row.c_witness = j;
          row.n = rb[t].n;
          row.lhs = orbit_value(m2, sum, spec, seq.box(row.n));
          row.rhs = rb[t].value + rc[t].value;
          row.holds = row.lhs >= row.rhs;
          out[t] = std::move(row);
        } catch (const CapacityError&) {
        }
      });
      for (auto& row : out) {
        if (!row) break;
        r.easy_direction_holds = r.easy_direction_holds && row->holds;
        r.easy_direction.push_back(std::move(*row));
      }
    }
  return r;
}

}  // namespace mwl
