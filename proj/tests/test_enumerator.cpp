#include "doctest.h"
#include "wkc/enumerator.hpp"
#include "wkc/presentation.hpp"

using namespace wkc;

namespace {

std::string repeat(const std::string& w, int n) {
  std::string s = w;
  for (int i = 1; i < n; ++i) s += "*" + w;
  return s;
}

std::size_t order_of(const std::string& text, Strategy s = Strategy::automatic) {
  EnumerationOptions o;
  o.strategy = s;
  const CosetTable t = todd_coxeter(parse_presentation(text), {}, o);
  REQUIRE(t.closed());
  return t.size();
}

}  // namespace

TEST_CASE("standard small groups") {
  for (Strategy s : {Strategy::felsch, Strategy::hlt}) {
    CHECK(order_of("< a | a^5 >", s) == 5);
    CHECK(order_of("< a,b | a^2, b^3, " + repeat("a*b", 2) + " >", s) == 6);
    CHECK(order_of("< a,b | a^2, b^3, " + repeat("a*b", 3) + " >", s) == 12);
    CHECK(order_of("< a,b | a^2, b^3, " + repeat("a*b", 4) + " >", s) == 24);
    CHECK(order_of("< a,b | a^2, b^3, " + repeat("a*b", 5) + " >", s) == 60);
    CHECK(order_of("< a,b | a^4, b^2*a^-2, b^-1*a*b*a >", s) == 8);
    CHECK(order_of("< a,b | a^8, b^2, b*a*b*a >", s) == 16);
  }
}

TEST_CASE("index of a subgroup") {
  const Presentation p = parse_presentation("< a,b | a^2, b^3, " + repeat("a*b", 5) + " >");
  CHECK(todd_coxeter(p, {parse_word(p, "b")}).size() == 20);
  CHECK(todd_coxeter(p, {parse_word(p, "a"), parse_word(p, "b")}).size() == 1);
}

TEST_CASE("overflow is reported, never an index") {
  EnumerationOptions o;
  o.max_cosets = 1000;
  const CosetTable t = todd_coxeter(parse_presentation("< a,b | a^3, b^3 >"), {}, o);
  CHECK_FALSE(t.closed());
  CHECK(t.status() == EnumStatus::overflowed);
}

TEST_CASE("weak commutativity groups over A_{2,3}") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  CHECK(todd_coxeter(build_pairs_presentation(graph_pairs(identity_bijection(order.group())))).size() == 1024);
  const CosetTable t = todd_coxeter(build_pairs_presentation(graph_pairs(bijection_from_cycles(order, "(6,7,8)"))));
  CHECK(t.size() == 256);
  CHECK(perm_image(t, true).order() == 256);
}

TEST_CASE("regular image of a cyclic group") {
  const CosetTable t = todd_coxeter(parse_presentation("< a | a^5 >"));
  const PermutationGroup g = perm_image(t, true);
  REQUIRE(g.generators().size() == 1);
  CHECK(g.generators()[0].cycle_type() == std::vector<std::size_t>{5});
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("felsch") == Strategy::felsch);
  CHECK(to_string(Strategy::hlt) == "hlt");
  CHECK_THROWS_AS(parse_strategy("nope"), Error);
}
