#include "doctest.h"
#include "wkc/enumerator.hpp"
#include "wkc/presentation.hpp"

using namespace wkc;

TEST_CASE("graph of the identity on A_{2,3}") {
  const AbelianGroup a = AbelianGroup::elementary(2, 3);
  const PairSet pairs = graph_pairs(identity_bijection(a));
  CHECK(pairs.pairs.size() == 7);
  const Presentation p = build_pairs_presentation(pairs);
  CHECK(p.generators == std::vector<std::string>{"a1", "a2", "a3", "b1", "b2", "b3"});
  CHECK(p.relators.size() == 19);
}

TEST_CASE("chi pair sets") {
  const AbelianGroup a = AbelianGroup::elementary(2, 2);
  CHECK(chi_pairs(a, {a.generator(0), a.generator(1)}, 2).pairs.size() == 3);
  CHECK(chi_pairs(a, {a.generator(0), a.generator(1)}, 1).pairs.size() == 2);
  CHECK(chi_full_pairs(AbelianGroup::elementary(3, 2)).pairs.size() == 8);
  CHECK_THROWS_AS(chi_pairs(a, {a.generator(0)}, 0), Error);
}

TEST_CASE("example pairs over A_{3,3}") {
  const PairSet e = example1_pairs(3);
  REQUIRE(e.pairs.size() == 6);
  const AbelianGroup& a = e.a;
  // (a1a2, b1 b2^-1)
  CHECK(e.pairs[3].first == combine(a, a.generator(0), a.generator(1)));
  CHECK(e.pairs[3].second == combine(a, a.generator(0), a.generator(1), -1));
}

TEST_CASE("presentation text round trip") {
  const std::string text = "< a1,a2,b1 | a1^2, [a1,a2], [a1*a2,b1^-1], a2^3*b1 >";
  const Presentation p = parse_presentation(text);
  CHECK(format_presentation(p) == text);
  CHECK(p.relators[2].is_commutator());
  CHECK(parse_word(p, "a1*b1^-1*a1").length() == 3);
  CHECK_THROWS_AS(parse_presentation("< a | b^2 >"), Error);
}

TEST_CASE("word algebra") {
  const GroupWord a = GroupWord::generator(0), b = GroupWord::generator(1);
  CHECK((a * a.inverse()).empty());
  CHECK(commutator(a, b).length() == 4);
  CHECK(commutator({a, b, a}) == commutator(commutator(a, b), a));
  CHECK(a.power(3).letters().size() == 1);
}

TEST_CASE("cyclic groups give A x B") {
  const AbelianGroup c4({4});
  const ElementOrder order(c4, EnumerationMode::graded_lex);
  for (const char* f : {"()", "(2,3)", "(2,4)", "(3,4)", "(2,3,4)", "(2,4,3)"}) {
    const Presentation p = build_pairs_presentation(graph_pairs(bijection_from_cycles(order, f)));
    CHECK(todd_coxeter(p).size() == 16);
  }
}

TEST_CASE("extension specs") {
  const Extension e = build_extension(chi_extension_spec(3));
  const AbelianGroup& h = e.spec.h_tilde;
  // a1 -> b1 and a1 h -> h^f.
  CHECK(e.f_star(h.generator(0)) == e.spec.k_tilde.generator(0));
  CHECK(e.f_star(combine(h, h.generator(0), h.generator(1))) == e.spec.k_tilde.generator(1));
  CHECK(e.f_star(h.generator(1)) == combine(e.spec.k_tilde, e.spec.k_tilde.generator(0), e.spec.k_tilde.generator(1)));
  const Extension toy = build_extension(toy_extension_spec());
  CHECK(toy.f_star.domain().order() == 4);
}

TEST_CASE("sanov presentation on C_2") {
  const AbelianGroup c2({2});
  const PointedBijection f = identity_bijection(c2);
  const Presentation p = build_sanov(c2, c2, f, {0, 1}, {0, 1});
  CHECK(todd_coxeter(p).size() == 4);
  CHECK_THROWS_AS(build_sanov(c2, c2, f, {0}, {0, 1}), Error);
}
