#include "doctest.h"
#include "wkc/abelian.hpp"

using namespace wkc;

TEST_CASE("graded-lex listing of A_{2,3}") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  std::vector<std::string> names;
  for (const auto& x : order.elements()) names.push_back(format_element(x));
  CHECK(names == std::vector<std::string>{"0", "a1", "a2", "a3", "a1+a2", "a1+a3", "a2+a3", "a1+a2+a3"});
}

TEST_CASE("plain-lex listing puts the identity first") {
  const ElementOrder order(AbelianGroup::elementary(3, 2), EnumerationMode::plain_lex);
  CHECK(order.group().is_identity(order.at(1)));
  CHECK(order.size() == 9);
  for (std::size_t i = 1; i <= order.size(); ++i) CHECK(order.position(order.at(i)) == i);
}

TEST_CASE("cyclic subgroups") {
  const ElementOrder a33(AbelianGroup::elementary(3, 3), EnumerationMode::graded_lex);
  CHECK(CyclicSubgroupIndex(a33).size() == 13);
  const ElementOrder a24(AbelianGroup::elementary(2, 4), EnumerationMode::graded_lex);
  CHECK(CyclicSubgroupIndex(a24).size() == 15);
}

TEST_CASE("automorphism groups as permutation groups") {
  const ElementOrder a23(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const PermutationGroup sl32 = automorphism_perm_group(a23, ActionDomain::elements);
  CHECK(sl32.degree() == 7);
  CHECK(sl32.order() == 168);
  const ElementOrder a33(AbelianGroup::elementary(3, 3), EnumerationMode::graded_lex);
  const PermutationGroup pgl = automorphism_perm_group(a33, ActionDomain::lines);
  CHECK(pgl.degree() == 13);
  CHECK(pgl.order() == 5616);
  CHECK(gl_order(2, 4) == 20160);
}

TEST_CASE("bijections from cycles") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const PointedBijection f = bijection_from_cycles(order, "(6,7)");
  CHECK(f(order.at(6)) == order.at(7));
  CHECK(bijection_to_cycles(order, f) == "(6,7)");
  CHECK_THROWS_AS(bijection_from_cycles(order, "(1,2)"), Error);
  CHECK_THROWS_AS(bijection_from_cycles(order, "(2,9)"), Error);
}

TEST_CASE("f-file round trip") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const PointedBijection f = bijection_from_cycles(order, "(5,6,7,8)");
  EnumerationMode mode = EnumerationMode::plain_lex;
  const PointedBijection g = bijection_from_json(bijection_to_json(order, f), &mode);
  CHECK(g == f);
  CHECK(mode == EnumerationMode::graded_lex);
}

TEST_CASE("matrices over GF(p)") {
  const auto gens = gl_generators(3, 2);
  for (const auto& m : gens) CHECK(inverse(m) * m == ModMatrix::identity(3, 2));
  const AbelianGroup a = AbelianGroup::elementary(3, 2);
  CHECK(is_basis({a.generator(0), a.generator(1)}, a));
  CHECK_FALSE(is_basis({a.generator(0), combine(a, a.generator(0), a.generator(0))}, a));
  CHECK(rank_mod_p({a.generator(0), a.generator(1), combine(a, a.generator(0), a.generator(1))}, 3) == 2);
}

TEST_CASE("example bijection on A_{p,2}") {
  const PointedBijection f = example2_map(5);
  const AbelianGroup& a = f.domain();
  const AbelianElement x = combine(a, a.generator(0), a.generator(1), 2);  // a1 + 2 a2
  CHECK(f(x) == combine(a, a.generator(0), a.generator(1), -2));
  CHECK(f(a.generator(1)) == a.generator(1));
}
