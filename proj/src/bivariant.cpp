#include "mwl/bivariant.hpp"

#include <cstdint>
#include <map>

#include "mwl/errors.hpp"
#include "mwl/parallel.hpp"

namespace mwl {

BivariantSpec BivariantSpec::quotient_length(const WeakLengthSpec& base) {
  if (!base.is_length_induced()) throw DomainError("quotient upgrading needs a length-induced base, got " + base.name());
  return {Kind::QuotientLength, base};
}

std::string BivariantSpec::name() const {
  return kind == Kind::CoverLog ? std::string("cover_log") : "quotient_length(" + base.name() + ")";
}

// --- cover upgrading --------------------------------------------------------

namespace {

using Mask = std::uint32_t;

struct CoverSearch {
  std::vector<Mask> traces;
  std::vector<std::uint8_t> memo;  // 0xFF = unknown

  // fewest candidates covering every bit of mask
  std::uint8_t solve(Mask mask) {
    if (mask == 0) return 0;
    std::uint8_t& slot = memo[mask];
    if (slot != 0xFF) return slot;
    const Mask low = mask & (~mask + 1);
    std::uint8_t best = 0xFE;
    for (const Mask t : traces) {
      if (!(t & low)) continue;
      const std::uint8_t r = solve(mask & ~t);
      if (r + 1 < best) best = static_cast<std::uint8_t>(r + 1);
    }
    slot = best;
    return best;
  }
};

}  // namespace

CoverResult cover_bivariant(const FinAbGroup& g, const AbSet& a, const AbSet& b) {
  if (a.empty() || b.empty()) throw DomainError("cover_bivariant: sets must be nonempty");
  g.require(a);
  g.require(b);
  if (a.size() > kCoverUniverseCap) {
    throw CapacityError("cover_bivariant: |A| = " + std::to_string(a.size()) + " exceeds the exact-search cap of " +
                        std::to_string(kCoverUniverseCap));
  }

  // Candidate translates grouped by the part of A they cover; only the
  // least element of each group can appear in a lexicographically least cover.
  std::map<Mask, AbElement> by_trace;
  for (const auto& x : a)
    for (const auto& y : b) {
      const AbElement c = g.sub(x, y);
      Mask trace = 0;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (b.contains(g.sub(a[i], c))) trace |= Mask(1) << i;
      auto it = by_trace.find(trace);
      if (it == by_trace.end()) {
        by_trace.emplace(trace, c);
      } else if (c < it->second) {
        it->second = c;
      }
    }
  std::vector<std::pair<AbElement, Mask>> candidates;
  for (const auto& [t, c] : by_trace) candidates.emplace_back(c, t);
  std::sort(candidates.begin(), candidates.end());

  CoverSearch search;
  for (const auto& [c, t] : candidates) search.traces.push_back(t);
  const Mask full = a.size() == 32 ? ~Mask(0) : (Mask(1) << a.size()) - 1;
  search.memo.assign(std::size_t(full) + 1, 0xFF);
  const std::uint8_t k = search.solve(full);

  std::vector<AbElement> chosen;
  Mask mask = full;
  for (std::uint8_t left = k; left > 0; --left) {
    for (const auto& [c, t] : candidates) {
      if ((t & mask) && search.solve(mask & ~t) == left - 1) {
        chosen.push_back(c);
        mask &= ~t;
        break;
      }
    }
  }
  return {LengthValue::log_of(Integer(static_cast<unsigned long>(k))), AbSet(std::move(chosen))};
}

// --- quotient upgrading -----------------------------------------------------

LengthValue quotient_bivariant(const WeakLengthSpec& base, const FinAbGroup& g, const AbSet& a, const AbSet& b) {
  if (a.empty() || b.empty()) throw DomainError("quotient_bivariant: sets must be nonempty");
  g.require(a);
  g.require(b);
  const QuotientMap q = quotient_group(g, b);
  return eval_weak_length(base, q.group, q.projection.apply(a));
}

LengthValue quotient_log_card(const FinAbGroup& g, const AbSet& a, const AbSet& b) {
  return quotient_bivariant(WeakLengthSpec::log_card(), g, a, b);
}

LengthValue eval_bivariant(const BivariantSpec& spec, const FinAbGroup& g, const AbSet& a, const AbSet& b) {
  if (spec.kind == BivariantSpec::Kind::CoverLog) return cover_bivariant(g, a, b).value;
  return quotient_bivariant(spec.base, g, a, b);
}

AbSet kernel_witness(const BivariantSpec& spec, const AbHom& phi, const AbSet& a) {
  const FinAbGroup& g = phi.source();
  g.require(a);
  if (spec.kind == BivariantSpec::Kind::CoverLog) {
    const AbSet diffs = set_difference(g, a, a);
    return set_with_zero(g, set_filter(diffs, [&](const AbElement& x) { return phi.apply(x).is_zero(); }));
  }
  const SubgroupEmbedding span = subgroup_generated(g, a);
  const SubgroupEmbedding ker = hom_kernel(compose(phi, span.inclusion));
  std::vector<AbElement> gens{g.zero()};
  for (std::size_t i = 0; i < ker.group.ambient_dim(); ++i)
    gens.push_back(span.inclusion.apply(ker.inclusion.apply(ker.group.basis(i))));
  return AbSet(std::move(gens));
}

// --- property checks --------------------------------------------------------

SampleOptions bivariant_sample_options() {
  SampleOptions o;
  o.max_order = 36;
  o.max_free_rank = 0;
  o.max_set_size = 6;
  return o;
}

bool UpgradingReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return !p.counterexample.has_value(); });
}

const PropertyResult& UpgradingReport::property(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return p;
  throw DomainError("no property named " + name);
}

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::string>& property_names(const BivariantSpec& spec) {
  static const std::vector<std::string> cover{"regularity", "upgrading",       "product",      "quotient",
                                              "monotone_a", "antitone_b",      "triangle",     "derived_bound",
                                              "sum_bound",  "union_bound",     "invariance",   "kernel_witness"};
  static const std::vector<std::string> quotient = [] {
    auto v = cover;
    v.push_back("union_additivity");
    return v;
  }();
  return spec.kind == BivariantSpec::Kind::CoverLog ? cover : quotient;
}

struct SampleResult {
  std::map<std::string, std::optional<Fields>> failures;
};

AbSet shrink(const AbSet& s, std::size_t n) {
  std::vector<AbElement> v(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.size())));
  return AbSet(std::move(v));
}

SampleResult run_sample(const BivariantSpec& spec, SampleGenerator& gen) {
  SampleResult out;
  auto L = [&](const FinAbGroup& g, const AbSet& a, const AbSet& b) { return eval_bivariant(spec, g, a, b); };
  auto l1 = [&](const FinAbGroup& g, const AbSet& a) { return eval_weak_length(spec.base, g, a); };
  auto record = [&](const std::string& name, bool ok, Fields fields) {
    out.failures[name] = ok ? std::nullopt : std::optional<Fields>(std::move(fields));
  };

  const FinAbGroup g = gen.group();
  const AbSet a = gen.subset(g);
  const AbSet b = gen.subset(g);
  const AbSet c = gen.subset(g);
  const AbSet zero{g.zero()};
  const std::string gs = g.to_string();

  {
    const LengthValue v = L(g, zero, zero);
    record("regularity", v.is_zero(), {{"group", gs}, {"l(0,0)", v.to_string()}});
  }
  {
    const LengthValue u = L(g, a, zero), w = l1(g, a);
    record("upgrading", u == w, {{"group", gs}, {"A", set_to_string(a)}, {"l(A,0)", u.to_string()}, {"l(A)", w.to_string()}});
  }
  {
    const FinAbGroup h = gen.group();
    const AbSet a1 = shrink(a, 4), b1 = shrink(b, 4);
    const AbSet a2 = gen.subset(h, 4), b2 = gen.subset(h, 4);
    const LengthValue lhs = L(direct_sum(g, h), set_product(a1, a2), set_product(b1, b2));
    const LengthValue r1 = L(g, a1, b1), r2 = L(h, a2, b2);
    record("product", lhs == r1 + r2,
           {{"groups", gs + " x " + h.to_string()},
            {"A", set_to_string(a1)},
            {"B", set_to_string(b1)},
            {"A'", set_to_string(a2)},
            {"B'", set_to_string(b2)},
            {"l(AxA',BxB')", lhs.to_string()},
            {"l(A,B)", r1.to_string()},
            {"l(A',B')", r2.to_string()}});
  }
  {
    AbHom phi = gen.hom(g, gen.group());
    if (gen.rng().coin()) phi = quotient_group(g, AbSet{gen.element(g)}).projection;
    const LengthValue lhs = L(phi.target(), phi.apply(a), phi.apply(b));
    const LengthValue rhs = L(g, a, b);
    record("quotient", lhs <= rhs,
           {{"group", gs},
            {"hom", phi.matrix().to_string() + " to " + phi.target().to_string()},
            {"A", set_to_string(a)},
            {"B", set_to_string(b)},
            {"l(phiA,phiB)", lhs.to_string()},
            {"l(A,B)", rhs.to_string()}});

    const AbSet w = kernel_witness(spec, phi, a);
    const LengthValue lw = L(g, a, w), lp = l1(phi.target(), phi.apply(a));
    record("kernel_witness", lw == lp,
           {{"group", gs},
            {"hom", phi.matrix().to_string() + " to " + phi.target().to_string()},
            {"A", set_to_string(a)},
            {"B", set_to_string(w)},
            {"l(A,B)", lw.to_string()},
            {"l(phiA)", lp.to_string()}});
  }
  {
    const AbSet a1 = shrink(a, std::max<std::size_t>(1, a.size() / 2));
    const LengthValue small = L(g, a1, b), big = L(g, a, b);
    record("monotone_a", small <= big,
           {{"group", gs}, {"A1", set_to_string(a1)}, {"A", set_to_string(a)}, {"B", set_to_string(b)}});
    const AbSet b1 = shrink(b, std::max<std::size_t>(1, b.size() / 2));
    const LengthValue lb = L(g, a, b1);
    record("antitone_b", big <= lb,
           {{"group", gs}, {"A", set_to_string(a)}, {"B1", set_to_string(b1)}, {"B", set_to_string(b)}});
  }
  {
    const LengthValue ac = L(g, a, c), ab = L(g, a, b), bc = L(g, b, c);
    record("triangle", ac <= ab + bc,
           {{"group", gs},
            {"A", set_to_string(a)},
            {"B", set_to_string(b)},
            {"C", set_to_string(c)},
            {"l(A,C)", ac.to_string()},
            {"l(A,B)", ab.to_string()},
            {"l(B,C)", bc.to_string()}});
    const LengthValue la = l1(g, a), lb = l1(g, b);
    record("derived_bound", la <= ab + lb,
           {{"group", gs}, {"A", set_to_string(a)}, {"B", set_to_string(b)}, {"l(A)", la.to_string()},
            {"l(A,B)", ab.to_string()}, {"l(B)", lb.to_string()}});
    if (spec.kind == BivariantSpec::Kind::QuotientLength) {
      const LengthValue lu = l1(g, a.unite(b));
      record("union_additivity", lu == ab + lb,
             {{"group", gs}, {"A", set_to_string(a)}, {"B", set_to_string(b)}, {"l(AuB)", lu.to_string()},
              {"l(A,B)", ab.to_string()}, {"l(B)", lb.to_string()}});
    }
  }
  {
    const AbSet a1 = shrink(a, 4), a2 = gen.subset(g, 4), b1 = shrink(b, 4), b2 = gen.subset(g, 4);
    const LengthValue lhs = L(g, set_sum(g, a1, a2), set_sum(g, b1, b2));
    const LengthValue r1 = L(g, a1, b1), r2 = L(g, a2, b2);
    record("sum_bound", lhs <= r1 + r2,
           {{"group", gs}, {"A", set_to_string(a1)}, {"A'", set_to_string(a2)}, {"B", set_to_string(b1)},
            {"B'", set_to_string(b2)}, {"l(A+A',B+B')", lhs.to_string()}, {"l(A,B)", r1.to_string()},
            {"l(A',B')", r2.to_string()}});

    // at most 4 elements each once 0 is adjoined, so |A + A'| stays within the cover cap
    const AbSet z1 = set_with_zero(g, shrink(a1, 3)), z2 = set_with_zero(g, shrink(a2, 3));
    const LengthValue lu = L(g, z1.unite(z2), b), ls = L(g, set_sum(g, z1, z2), b);
    record("union_bound", lu <= ls,
           {{"group", gs}, {"A", set_to_string(z1)}, {"A'", set_to_string(z2)}, {"B", set_to_string(b)},
            {"l(AuA',B)", lu.to_string()}, {"l(A+A',B)", ls.to_string()}});
  }
  {
    const AbHom psi = gen.isomorphism(g);
    const LengthValue before = L(g, a, b), after = L(psi.target(), psi.apply(a), psi.apply(b));
    record("invariance", before == after,
           {{"group", gs}, {"iso", psi.matrix().to_string()}, {"A", set_to_string(a)}, {"B", set_to_string(b)},
            {"before", before.to_string()}, {"after", after.to_string()}});
  }
  return out;
}

}  // namespace

UpgradingReport check_upgrading_proper(const BivariantSpec& spec, std::uint64_t seed, std::size_t budget,
                                       const SampleOptions& options) {
  if (budget == 0) throw DomainError("check_upgrading_proper: budget must be at least 1");
  const Rng root(seed);
  std::vector<SampleResult> results(budget);
  parallel_for(budget, [&](std::size_t i) {
    SampleGenerator gen(root.split(i), options);
    results[i] = run_sample(spec, gen);
  });

  UpgradingReport report{spec, budget, {}};
  for (const auto& name : property_names(spec)) {
    PropertyResult p{name, 0, std::nullopt};
    for (std::size_t i = 0; i < budget; ++i) {
      const auto it = results[i].failures.find(name);
      if (it == results[i].failures.end()) continue;
      ++p.checked;
      if (it->second && !p.counterexample) p.counterexample = Counterexample{i, *it->second};
    }
    report.properties.push_back(std::move(p));
  }
  return report;
}

}  // namespace mwl
