#pragma once

// Sample-based checks of the weak length axioms and their consequences.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mwl/sampling.hpp"
#include "mwl/weaklength.hpp"

namespace mwl {

enum class Axiom { Regularity, Product, Quotient, UpperContinuity, StrongQuotient, SubaddSum, UnionVsSum, Invariance };

std::string axiom_name(Axiom a);
/// Accepts the snake_case names, e.g. "strong_quotient".
std::optional<Axiom> parse_axiom(const std::string& name);
const std::vector<Axiom>& all_axioms();

/// Witness rendered as ordered (field, value) strings.
struct Counterexample {
  std::size_t sample = 0;
  std::vector<std::pair<std::string, std::string>> fields;
};

struct AxiomReport {
  WeakLengthSpec spec;
  Axiom axiom = Axiom::Regularity;
  std::size_t budget = 0;
  std::size_t checked = 0;
  /// Samples where the weak length is undefined (TorsLog on a set with no
  /// k-torsion element).
  std::size_t skipped = 0;
  bool adjoin_zero = false;
  std::optional<Counterexample> counterexample;

  bool passed() const { return !counterexample.has_value(); }
};

/// A user-supplied instance checked before the random stream.  Missing
/// fields are filled from the instance's own generator.
struct AxiomInstance {
  std::optional<FinAbGroup> group;
  std::optional<FinAbGroup> group2;
  std::optional<AbSet> a;
  std::optional<AbSet> b;
  /// Source must be group; its target replaces group2 for quotient-type axioms.
  std::optional<AbHom> hom;
};

/// Evaluates the axiom on `leading` followed by random samples until
/// `budget` samples in total have been drawn.  The first counterexample
/// (smallest sample index) is reported; results do not depend on threads.
AxiomReport check_axiom(const WeakLengthSpec& spec, Axiom axiom, std::uint64_t seed, std::size_t budget,
                        const SampleOptions& options = {}, const std::vector<AxiomInstance>& leading = {});

}  // namespace mwl
