#include "mwl/orbit_count.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "mwl/errors.hpp"

namespace mwl {

bool orbit_count_applicable(const ShiftModule& m) {
  return m.plain_carrier() && m.support_group().ambient_dim() == 1 && m.support_group().free_rank() == 1;
}

namespace {

// The sumset of `mult` copies of A, one block of choices per offset.
struct Block {
  long start = 0;
  long end = 0;
  // choices[c][x - start] = coefficient of choice c at position x
  std::vector<std::vector<AbElement>> choices;
};

using NfaState = std::vector<std::uint32_t>;
using DfaState = std::vector<NfaState>;

struct VecHash {
  std::size_t operator()(const NfaState& v) const noexcept {
    std::size_t seed = v.size();
    for (auto x : v) hash_combine(seed, x);
    return seed;
  }
  std::size_t operator()(const DfaState& v) const noexcept {
    std::size_t seed = v.size();
    for (const auto& s : v) hash_combine(seed, (*this)(s));
    return seed;
  }
};

}  // namespace

Integer count_orbit_sum(const ShiftModule& m, const GRSet& a, const std::vector<GroupElem>& f,
                        std::optional<Integer> torsion_k, std::size_t state_cap) {
  if (!orbit_count_applicable(m)) {
    throw ConfigError("orbit counting automaton needs a module on Z with a plain carrier, got " + m.to_string());
  }
  if (a.empty() || f.empty()) throw DomainError("count_orbit_sum: A and F must be nonempty");
  for (const auto& x : a) m.require(x);
  const FinAbGroup& c = m.carrier_coeff();

  // translate s⁻¹A is A shifted by u = -act(s)
  std::map<long, unsigned long> multiplicity;
  for (const auto& s : f) ++multiplicity[-m.act(s).coords[0].get_si()];

  std::map<unsigned long, GRSet> sumsets;
  std::vector<Block> blocks;
  for (const auto& [u, mult] : multiplicity) {
    auto it = sumsets.find(mult);
    if (it == sumsets.end()) {
      GRSet s = a;
      for (unsigned long i = 1; i < mult; ++i) {
        s = minkowski_sum(m, s, a);
        if (s.size() > kFiniteSubsetCap) throw CapacityError("count_orbit_sum: block sumset too large");
      }
      it = sumsets.emplace(mult, std::move(s)).first;
    }
    const GRSet& b = it->second;
    long lo = 0, hi = -1;
    bool any = false;
    for (const auto& x : b)
      for (const auto& t : x.terms()) {
        const long p = t.pos.coords[0].get_si();
        if (!any) {
          lo = hi = p;
          any = true;
        }
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    if (!any) continue;  // the block only contains 0
    Block blk{u + lo, u + hi, {}};
    for (const auto& x : b) {
      std::vector<AbElement> col(static_cast<std::size_t>(hi - lo + 1), c.zero());
      for (const auto& t : x.terms()) col[static_cast<std::size_t>(t.pos.coords[0].get_si() - lo)] = t.coeff;
      blk.choices.push_back(std::move(col));
    }
    blocks.push_back(std::move(blk));
  }
  if (blocks.empty()) return 1;
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.start < y.start; });

  long first = blocks.front().start, last = blocks.front().end;
  for (const auto& b : blocks) last = std::max(last, b.end);

  std::unordered_map<DfaState, Integer, VecHash> dfa;
  dfa.emplace(DfaState{NfaState{}}, Integer(1));
  std::vector<std::size_t> active;  // block indices in NFA-state order
  std::size_t next_block = 0;

  for (long x = first; x <= last; ++x) {
    // open blocks starting here: every NFA state branches over their choices
    std::vector<std::size_t> opening;
    while (next_block < blocks.size() && blocks[next_block].start == x) opening.push_back(next_block++);
    if (!opening.empty()) {
      std::unordered_map<DfaState, Integer, VecHash> expanded;
      for (auto& [state, count] : dfa) {
        DfaState grown = state;
        for (const std::size_t bi : opening) {
          DfaState tmp;
          const auto nc = static_cast<std::uint32_t>(blocks[bi].choices.size());
          for (const auto& s : grown)
            for (std::uint32_t ch = 0; ch < nc; ++ch) {
              NfaState t = s;
              t.push_back(ch);
              tmp.push_back(std::move(t));
            }
          grown = std::move(tmp);
        }
        std::sort(grown.begin(), grown.end());
        expanded[std::move(grown)] += count;
      }
      dfa = std::move(expanded);
      active.insert(active.end(), opening.begin(), opening.end());
    }

    // which active slots close after this position
    std::vector<bool> keep(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) keep[i] = blocks[active[i]].end > x;

    std::unordered_map<DfaState, Integer, VecHash> stepped;
    for (const auto& [state, count] : dfa) {
      std::map<AbElement, DfaState> by_symbol;
      for (const auto& s : state) {
        AbElement sym = c.zero();
        for (std::size_t i = 0; i < active.size(); ++i) {
          const Block& b = blocks[active[i]];
          sym = c.add(sym, b.choices[s[i]][static_cast<std::size_t>(x - b.start)]);
        }
        if (torsion_k && !c.scale(*torsion_k, sym).is_zero()) continue;
        NfaState t;
        for (std::size_t i = 0; i < active.size(); ++i)
          if (keep[i]) t.push_back(s[i]);
        by_symbol[sym].push_back(std::move(t));
      }
      for (auto& [sym, next] : by_symbol) {
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        stepped[std::move(next)] += count;
      }
    }
    if (stepped.size() > state_cap) {
      throw CapacityError("count_orbit_sum: more than " + std::to_string(state_cap) + " automaton states");
    }
    dfa = std::move(stepped);
    std::vector<std::size_t> still;
    for (std::size_t i = 0; i < active.size(); ++i)
      if (keep[i]) still.push_back(active[i]);
    active = std::move(still);
  }

  Integer total = 0;
  for (const auto& [state, count] : dfa) total += count;
  return total;
}

}  // namespace mwl
