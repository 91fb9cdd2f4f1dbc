#include <random>
#include <set>

#include "doctest.h"
#include "mwl/errors.hpp"
#include "mwl/finabelian.hpp"

using namespace mwl;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Elements of the finite subgroup spanned by gens, by closure under addition.
std::set<AbElement> span_by_closure(const FinAbGroup& g, const std::vector<AbElement>& gens) {
  std::set<AbElement> seen{g.zero()};
  std::vector<AbElement> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<AbElement> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        const AbElement y = g.add(x, s);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

FinAbGroup random_finite_group(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 3), mod(2, 6);
  for (;;) {
    std::vector<Integer> m;
    const int n = count(rng);
    long card = 1;
    for (int i = 0; i < n; ++i) {
      m.emplace_back(mod(rng));
      card *= m.back().get_si();
    }
    if (card <= 100) return FinAbGroup(m);
  }
}

AbElement random_element(std::mt19937_64& rng, const FinAbGroup& g) {
  std::vector<Integer> c;
  for (const auto& m : g.moduli()) {
    std::uniform_int_distribution<long> d(0, m.get_si() - 1);
    c.emplace_back(d(rng));
  }
  return g.element(c);
}

}  // namespace

TEST_CASE("invariant factors and cardinality") {
  const FinAbGroup g(ints({2, 3}));
  CHECK(g.invariant_factors() == ints({6}));
  CHECK(*g.cardinality() == 6);
  CHECK(FinAbGroup().cardinality() == Integer(1));
  CHECK_FALSE(FinAbGroup::free(1).cardinality().has_value());
  CHECK(FinAbGroup(ints({4, 6, 0})).invariant_factors() == ints({2, 12}));
  CHECK(FinAbGroup(ints({4, 6, 0})).free_rank() == 1);
  CHECK_THROWS_AS(FinAbGroup(ints({1})), DomainError);
  CHECK_THROWS_AS(FinAbGroup::canonical(0, ints({4, 6})), DomainError);
}

TEST_CASE("elements are stored in canonical residue form") {
  const FinAbGroup g(ints({0, 4}));
  CHECK(g.element({-3, -1}) == g.element({-3, 3}));
  CHECK(g.add(g.element({1, 3}), g.element({2, 3})) == g.element({3, 2}));
  CHECK_THROWS_AS(g.require(AbElement{ints({0, 5})}), DomainError);
}

TEST_CASE("subgroup generated: worked examples") {
  const FinAbGroup z2 = FinAbGroup::free(2);
  auto s = subgroup_generated(z2, AbSet{z2.element({2, 0}), z2.element({0, 3})});
  CHECK(s.group.free_rank() == 2);
  CHECK(s.group.invariant_factors().empty());

  auto t = subgroup_generated(z2, AbSet{z2.zero()});
  CHECK(t.group.is_trivial());

  const FinAbGroup z6 = FinAbGroup::cyclic(6);
  auto u = subgroup_generated(z6, AbSet{z6.element({2})});
  CHECK(u.group.invariant_factors() == ints({3}));
  CHECK(u.inclusion.apply(u.group.basis(0)) == z6.element({2}));

  CHECK_THROWS_AS(subgroup_generated(z6, AbSet{AbElement{ints({7})}}), DomainError);
  CHECK_THROWS_AS(subgroup_generated(z6, AbSet{}), DomainError);
}

TEST_CASE("quotient group: worked examples") {
  const FinAbGroup z2 = FinAbGroup::free(2);
  auto q = quotient_group(z2, AbSet{z2.element({1, 0}), z2.element({0, 2})});
  CHECK(q.group.free_rank() == 0);
  CHECK(q.group.invariant_factors() == ints({2}));

  const FinAbGroup z6 = FinAbGroup::cyclic(6);
  auto r = quotient_group(z6, AbSet{z6.element({3})});
  CHECK(r.group.invariant_factors() == ints({3}));

  const FinAbGroup g(ints({0, 4}));
  auto id = quotient_group(g, AbSet{g.zero()});
  CHECK(id.group.isomorphic_to(g));
}

TEST_CASE("kernel and image: worked examples") {
  const FinAbGroup z = FinAbGroup::free(1);
  const FinAbGroup z2 = FinAbGroup::cyclic(2);
  const AbHom red(z, z2, IntMatrix{{1}});
  auto k = hom_kernel(red);
  CHECK(k.group.free_rank() == 1);
  CHECK(k.inclusion.apply(k.group.basis(0)).coords[0] % 2 == 0);
  CHECK(hom_image(red).group.invariant_factors() == ints({2}));

  const FinAbGroup z4 = FinAbGroup::cyclic(4);
  const AbHom dbl(z4, z4, IntMatrix{{2}});
  CHECK(hom_kernel(dbl).group.invariant_factors() == ints({2}));
  CHECK(hom_image(dbl).group.invariant_factors() == ints({2}));
  CHECK(hom_kernel(dbl).inclusion.apply(AbElement{ints({1})}) == z4.element({2}));

  const AbHom id = AbHom::identity(z4);
  CHECK(hom_kernel(id).group.is_trivial());
  CHECK(hom_image(id).group.isomorphic_to(z4));

  CHECK_THROWS_AS(AbHom(z2, z, IntMatrix{{1}}), DomainError);
}

TEST_CASE("torsion subgroups") {
  const FinAbGroup g(ints({4, 2}));
  auto t = torsion_k(g, 2);
  CHECK(*t.group.cardinality() == 4);
  CHECK(t.group.invariant_factors() == ints({2, 2}));
  CHECK(torsion_k(g, 1).group.is_trivial());
  CHECK(torsion_k(FinAbGroup::free(1), 3).group.is_trivial());
  CHECK_THROWS_AS(torsion_k(g, 0), DomainError);
}

TEST_CASE("random finite groups: order identities against enumeration") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    const FinAbGroup g = random_finite_group(rng);
    CAPTURE(g.to_string());
    const auto all = enumerate_elements(g);
    CHECK(all.size() == g.cardinality()->get_ui());

    std::vector<AbElement> gens;
    std::uniform_int_distribution<int> ngen(1, 3);
    for (int i = ngen(rng); i > 0; --i) gens.push_back(random_element(rng, g));
    const auto closure = span_by_closure(g, gens);

    auto sub = subgroup_generated(g, std::span<const AbElement>(gens));
    CHECK(*sub.group.cardinality() == closure.size());
    for (const auto& x : enumerate_elements(sub.group)) CHECK(closure.count(sub.inclusion.apply(x)) == 1);

    auto quot = quotient_group(g, std::span<const AbElement>(gens));
    CHECK(*g.cardinality() == closure.size() * *quot.group.cardinality());
    for (const auto& x : closure) CHECK(quot.projection.apply(x).is_zero());
    std::set<AbElement> image;
    for (const auto& x : all) image.insert(quot.projection.apply(x));
    CHECK(image.size() == quot.group.cardinality()->get_ui());

    // random hom: basis images scaled so the source relations die
    const FinAbGroup h = random_finite_group(rng);
    IntMatrix mat(h.ambient_dim(), g.ambient_dim());
    for (std::size_t j = 0; j < g.ambient_dim(); ++j) {
      const AbElement z = random_element(rng, h);
      for (std::size_t i = 0; i < h.ambient_dim(); ++i) {
        // scale so m_j * z lands in the relations of h
        const Integer fix = h.moduli()[i] / gcd(h.moduli()[i], g.moduli()[j]);
        mat(i, j) = z.coords[i] * fix;
      }
    }
    const AbHom phi(g, h, mat);
    auto ker = hom_kernel(phi);
    auto im = hom_image(phi);
    CHECK(*g.cardinality() == *ker.group.cardinality() * *im.group.cardinality());
    std::size_t zeros = 0;
    for (const auto& x : all) zeros += phi.apply(x).is_zero();
    CHECK(zeros == ker.group.cardinality()->get_ui());

    std::uniform_int_distribution<int> kd(1, 6);
    const int k = kd(rng);
    std::size_t killed = 0;
    for (const auto& x : all) killed += g.scale(k, x).is_zero();
    CHECK(killed == torsion_k(g, k).group.cardinality()->get_ui());
  }
}

TEST_CASE("set arithmetic") {
  const FinAbGroup z = FinAbGroup::free(1);
  const AbSet a{z.element({0}), z.element({1})};
  CHECK(set_sum(z, a, a).size() == 3);
  CHECK(set_difference(z, a, a).size() == 3);
  CHECK(set_product(a, a).size() == 4);
  CHECK(set_with_zero(z, AbSet{z.element({5})}).size() == 2);
}
