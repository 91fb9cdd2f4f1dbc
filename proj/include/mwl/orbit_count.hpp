#pragma once

// Counting |A^[F]| without materializing the set, for modules living on Z
// with plain coefficient carriers.  Each translate s⁻¹A occupies a window of
// positions; scanning positions left to right, a nondeterministic automaton
// remembers the choices of the translates still in view and emits the summed
// coefficient.  Distinct sums are distinct output words, counted by a subset
// construction that carries, for every reachable subset, how many distinct
// prefixes lead to it.

#include <cstddef>
#include <optional>
#include <vector>

#include "mwl/groupring.hpp"

namespace mwl {

/// Modules on Γ' = Z (no torsion) with a plain carrier.
bool orbit_count_applicable(const ShiftModule& m);

/// Number of distinct elements of A^[F]; with torsion_k, only those killed
/// by k.  Throws CapacityError when the subset construction exceeds
/// state_cap states, ConfigError when the module is not supported.
Integer count_orbit_sum(const ShiftModule& m, const GRSet& a, const std::vector<GroupElem>& f,
                        std::optional<Integer> torsion_k = std::nullopt, std::size_t state_cap = 200000);

}  // namespace mwl
