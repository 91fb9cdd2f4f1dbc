#include "mwl/axioms.hpp"

#include <array>

#include "mwl/errors.hpp"
#include "mwl/parallel.hpp"

namespace mwl {

namespace {

constexpr std::array<std::pair<Axiom, const char*>, 8> kNames{{
    {Axiom::Regularity, "regularity"},
    {Axiom::Product, "product"},
    {Axiom::Quotient, "quotient"},
    {Axiom::UpperContinuity, "upper_continuity"},
    {Axiom::StrongQuotient, "strong_quotient"},
    {Axiom::SubaddSum, "subadd_sum"},
    {Axiom::UnionVsSum, "union_vs_sum"},
    {Axiom::Invariance, "invariance"},
}};

using Fields = std::vector<std::pair<std::string, std::string>>;

struct Outcome {
  bool skipped = false;
  std::optional<Fields> failure;
};

struct Skip {};

LengthValue eval(const WeakLengthSpec& spec, const FinAbGroup& g, const AbSet& a) {
  if (spec.kind == WeakLengthSpec::Kind::TorsLog) {
    const bool any = std::any_of(a.begin(), a.end(), [&](const AbElement& x) { return g.scale(spec.k, x).is_zero(); });
    if (!any) throw Skip{};
  }
  return eval_weak_length(spec, g, a);
}

std::string render_hom(const AbHom& h) {
  return h.source().to_string() + " -> " + h.target().to_string() + " by " + h.matrix().to_string();
}

// Quotient maps exercise the quotient axioms much harder than arbitrary
// homs into unrelated groups, so half of the sampled homs are projections.
AbHom sample_hom(SampleGenerator& gen, const FinAbGroup& g) {
  if (gen.rng().coin()) {
    std::vector<AbElement> rel;
    const auto n = gen.rng().below(2) + 1;
    for (std::uint64_t i = 0; i < n; ++i) rel.push_back(gen.element(g));
    return quotient_group(g, std::span<const AbElement>(rel)).projection;
  }
  return gen.hom(g, gen.group());
}

AbSet sample_kernel_subset(SampleGenerator& gen, const AbHom& phi) {
  const SubgroupEmbedding ker = hom_kernel(phi);
  std::vector<AbElement> v{phi.source().zero()};
  const auto n = gen.rng().below(gen.options().max_set_size);
  for (std::uint64_t i = 0; i < n; ++i) v.push_back(ker.inclusion.apply(gen.element(ker.group)));
  return AbSet(std::move(v));
}

Fields fail(std::initializer_list<std::pair<std::string, std::string>> f) { return Fields(f); }

Outcome run_one(const WeakLengthSpec& spec, Axiom axiom, SampleGenerator& gen, const AxiomInstance& inst) {
  const bool zero = gen.options().adjoin_zero;
  const FinAbGroup g = inst.group ? *inst.group : gen.group();
  auto set_a = [&] { return inst.a ? (zero ? set_with_zero(g, *inst.a) : *inst.a) : gen.subset(g); };

  try {
    switch (axiom) {
      case Axiom::Regularity: {
        const LengthValue v = eval(spec, g, AbSet{g.zero()});
        if (!v.is_zero()) return {false, fail({{"group", g.to_string()}, {"value", v.to_string()}})};
        return {};
      }
      case Axiom::Product: {
        const FinAbGroup h = inst.group2 ? *inst.group2 : gen.group();
        const AbSet a = set_a();
        const AbSet b = inst.b ? (zero ? set_with_zero(h, *inst.b) : *inst.b) : gen.subset(h);
        const LengthValue lhs = eval(spec, direct_sum(g, h), set_product(a, b));
        const LengthValue la = eval(spec, g, a);
        const LengthValue lb = eval(spec, h, b);
        if (lhs != la + lb) {
          return {false, fail({{"group", g.to_string()},
                               {"group2", h.to_string()},
                               {"A", set_to_string(a)},
                               {"B", set_to_string(b)},
                               {"l(AxB)", lhs.to_string()},
                               {"l(A)", la.to_string()},
                               {"l(B)", lb.to_string()}})};
        }
        return {};
      }
      case Axiom::Quotient: {
        const AbHom phi = inst.hom ? *inst.hom : sample_hom(gen, g);
        const AbSet a = set_a();
        const LengthValue la = eval(spec, g, a);
        const LengthValue lp = eval(spec, phi.target(), phi.apply(a));
        if (lp > la) {
          return {false, fail({{"hom", render_hom(phi)},
                               {"A", set_to_string(a)},
                               {"phi(A)", set_to_string(phi.apply(a))},
                               {"l(A)", la.to_string()},
                               {"l(phi(A))", lp.to_string()}})};
        }
        return {};
      }
      case Axiom::UpperContinuity: {
        // A_1 ⊆ ... ⊆ A_m built by adding one element at a time
        const AbSet top = set_a();
        std::vector<AbElement> chain;
        std::optional<LengthValue> prev;
        for (const auto& x : top) {
          chain.push_back(x);
          const AbSet ai(chain);
          std::optional<LengthValue> v;
          try {
            v = eval(spec, g, ai);
          } catch (const Skip&) {
            continue;
          }
          if (prev && *v < *prev) {
            return {false, fail({{"group", g.to_string()},
                                 {"A_i", set_to_string(ai)},
                                 {"l(A_i)", v->to_string()},
                                 {"l(A_{i-1})", prev->to_string()}})};
          }
          prev = v;
        }
        const LengthValue whole = eval(spec, g, top);
        if (!prev || !(*prev == whole)) {
          return {false, fail({{"group", g.to_string()}, {"union", set_to_string(top)}, {"l(union)", whole.to_string()}})};
        }
        return {};
      }
      case Axiom::StrongQuotient: {
        const AbHom phi = inst.hom ? *inst.hom : sample_hom(gen, g);
        const AbSet a = set_with_zero(g, set_a());
        AbSet b = inst.b ? set_with_zero(g, *inst.b) : sample_kernel_subset(gen, phi);
        for (const auto& x : b) {
          if (!phi.apply(x).is_zero()) throw DomainError("strong quotient instance: B is not inside ker phi");
        }
        const LengthValue lhs = eval(spec, g, set_sum(g, a, b));
        const LengthValue lp = eval(spec, phi.target(), phi.apply(a));
        const LengthValue lb = eval(spec, g, b);
        if (lhs < lp + lb) {
          return {false, fail({{"hom", render_hom(phi)},
                               {"A", set_to_string(a)},
                               {"B", set_to_string(b)},
                               {"l(A+B)", lhs.to_string()},
                               {"l(phi(A))", lp.to_string()},
                               {"l(B)", lb.to_string()}})};
        }
        return {};
      }
      case Axiom::SubaddSum: {
        const AbSet a = set_a();
        const AbSet b = inst.b ? (zero ? set_with_zero(g, *inst.b) : *inst.b) : gen.subset(g);
        const LengthValue lhs = eval(spec, g, set_sum(g, a, b));
        const LengthValue la = eval(spec, g, a);
        const LengthValue lb = eval(spec, g, b);
        if (lhs > la + lb) {
          return {false, fail({{"group", g.to_string()},
                               {"A", set_to_string(a)},
                               {"B", set_to_string(b)},
                               {"l(A+B)", lhs.to_string()},
                               {"l(A)", la.to_string()},
                               {"l(B)", lb.to_string()}})};
        }
        return {};
      }
      case Axiom::UnionVsSum: {
        const AbSet a = set_with_zero(g, set_a());
        const AbSet b = set_with_zero(g, inst.b ? *inst.b : gen.subset(g));
        const LengthValue lu = eval(spec, g, a.unite(b));
        const LengthValue ls = eval(spec, g, set_sum(g, a, b));
        if (lu > ls) {
          return {false, fail({{"group", g.to_string()},
                               {"A", set_to_string(a)},
                               {"B", set_to_string(b)},
                               {"l(A u B)", lu.to_string()},
                               {"l(A+B)", ls.to_string()}})};
        }
        return {};
      }
      case Axiom::Invariance: {
        const AbHom psi = inst.hom ? *inst.hom : gen.isomorphism(g);
        const AbSet a = set_a();
        const LengthValue la = eval(spec, g, a);
        const LengthValue lp = eval(spec, psi.target(), psi.apply(a));
        if (la != lp) {
          return {false, fail({{"iso", render_hom(psi)},
                               {"A", set_to_string(a)},
                               {"l(A)", la.to_string()},
                               {"l(psi(A))", lp.to_string()}})};
        }
        return {};
      }
    }
  } catch (const Skip&) {
    return {true, std::nullopt};
  }
  return {};
}

}  // namespace

std::string axiom_name(Axiom a) {
  for (const auto& [k, n] : kNames)
    if (k == a) return n;
  return "";
}

std::optional<Axiom> parse_axiom(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  return std::nullopt;
}

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> all = [] {
    std::vector<Axiom> v;
    for (const auto& [k, n] : kNames) v.push_back(k);
    return v;
  }();
  return all;
}

AxiomReport check_axiom(const WeakLengthSpec& spec, Axiom axiom, std::uint64_t seed, std::size_t budget,
                        const SampleOptions& options, const std::vector<AxiomInstance>& leading) {
  if (budget == 0) throw DomainError("check_axiom: budget must be at least 1");
  const Rng root(seed);
  std::vector<Outcome> outcomes(budget);
  parallel_for(budget, [&](std::size_t i) {
    SampleGenerator gen(root.split(i), options);
    const AxiomInstance inst = i < leading.size() ? leading[i] : AxiomInstance{};
    outcomes[i] = run_one(spec, axiom, gen, inst);
  });

  AxiomReport report{spec, axiom, budget, 0, 0, options.adjoin_zero, std::nullopt};
  for (std::size_t i = 0; i < budget; ++i) {
    if (outcomes[i].skipped) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    if (outcomes[i].failure && !report.counterexample) report.counterexample = Counterexample{i, *outcomes[i].failure};
  }
  return report;
}

}  // namespace mwl
