#pragma once

// JSON encodings of groups, sets, weak lengths, modules and reports.
// Integers are accepted as JSON numbers or decimal strings and are always
// written as strings when they can exceed 64 bits (counts, values).

#include <string>
#include <vector>

#include "json.hpp"
#include "mwl/axioms.hpp"
#include "mwl/bivariant.hpp"
#include "mwl/meanlen.hpp"

namespace mwl {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into InputError with the byte offset.
Json parse_json(const std::string& text, const std::string& source);

Integer integer_from_json(const Json& j, const std::string& where);

/// {"free_rank": d, "torsion": [m, ...]}; free coordinates come first.
FinAbGroup group_from_json(const Json& j);
Json group_to_json(const FinAbGroup& g);

AbElement element_from_json(const FinAbGroup& g, const Json& j);
Json element_to_json(const AbElement& x);
AbSet set_from_json(const FinAbGroup& g, const Json& j);
Json set_to_json(const AbSet& a);

/// {"target": group, "matrix": [[...], ...]} with the given source.
AbHom hom_from_json(const FinAbGroup& source, const Json& j);
Json hom_to_json(const AbHom& h);

WeakLengthSpec weak_length_from_json(const Json& j);
Json weak_length_to_json(const WeakLengthSpec& s);
BivariantSpec bivariant_from_json(const Json& j);
Json bivariant_to_json(const BivariantSpec& s);

/// {"kind": "log", "count": "8"} | {"kind": "rational", "value": "3/2"} |
/// {"kind": "infinity"}, each with a "text" rendering.
Json value_to_json(const LengthValue& v);
Json ratio_to_json(const ExactRatio& r);

/// List of [group_coords, coeff_coords] pairs, canonicalized in m.
GRElement gr_element_from_json(const ShiftModule& m, const Json& j);
Json gr_element_to_json(const GRElement& x);
GRSet gr_set_from_json(const ShiftModule& m, const Json& j);
Json gr_set_to_json(const GRSet& a);

/// {"closure": "coeff_subgroup", "generators": [coeff, ...]} or
/// {"closure": "principal_z", "p": p, "generators": [GRElement, ...]};
/// generators are read in the plain module `ambient`.
SubmodulePresentation submodule_from_json(const ShiftModule& ambient, const Json& j);

/// {"group", "coeff", "action_hom"?, "quotient"?}
ShiftModule module_from_json(const Json& j);
Json module_to_json(const ShiftModule& m);

Json counterexample_to_json(const Counterexample& c);
Json axiom_report_to_json(const AxiomReport& r);
Json upgrading_report_to_json(const UpgradingReport& r);
Json estimate_to_json(const MeanEstimate& e);
Json mean_bound_to_json(const MeanBound& b);
Json addition_report_to_json(const AdditionReport& r);

/// Checks the top-level report layout written by the command-line tool;
/// throws InputError naming the first offending path.
void validate_report(const Json& report);

}  // namespace mwl
