#include "doctest.h"
#include "wkc/structure.hpp"

using namespace wkc;

namespace {

GroupAnalysis analyze_graph(const char* cycles) {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  return analyze(regular_image(build_pairs_presentation(graph_pairs(bijection_from_cycles(order, cycles)))).group);
}

}  // namespace

TEST_CASE("A_{2,3} table") {
  const GroupAnalysis a = analyze_graph("()");
  CHECK(format_order(a.order) == "2^10");
  CHECK(a.nilpotency_class == 3);
  CHECK(a.derived_length == 2);
  const GroupAnalysis b = analyze_graph("(6,7)");
  CHECK(b.order == 1024);
  CHECK(b.nilpotency_class == 3);
  const GroupAnalysis c = analyze_graph("(6,7,8)");
  CHECK(c.order == 256);
  CHECK(c.nilpotency_class == 2);
  CHECK(c.derived_length == 2);
  const GroupAnalysis d = analyze_graph("(5,6,7,8)");
  CHECK(d.order == 256);
  CHECK(d.nilpotency_class == 2);
}

TEST_CASE("small permutation groups") {
  const Permutation t = Permutation::from_cycles("(1,2)", 4);
  const Permutation c = Permutation::from_cycles("(1,2,3,4)", 4);
  const GroupAnalysis s4 = analyze(build_group(4, {t, c}));
  CHECK(s4.order == 24);
  CHECK_FALSE(s4.nilpotency_class.has_value());
  CHECK(s4.derived_length == 3);
  CHECK(s4.center_order == 1);
  CHECK(s4.exponent == 12);
  const GroupAnalysis d8 = analyze(build_group(4, {Permutation::from_cycles("(1,3)", 4), c}));
  CHECK(d8.order == 8);
  CHECK(d8.nilpotency_class == 2);
  CHECK(d8.center_order == 2);
  CHECK(d8.abelian_invariants == std::vector<std::uint64_t>{2, 2});
}

TEST_CASE("chi(A_{2,2}) has order 2^5") {
  const AbelianGroup a = AbelianGroup::elementary(2, 2);
  const GroupImage img = regular_image(build_pairs_presentation(chi_pairs(a, {a.generator(0), a.generator(1)}, 2)));
  CHECK(img.group.order() == 32);
}

TEST_CASE("cyclic case is abelian") {
  const ElementOrder order(AbelianGroup({4}), EnumerationMode::graded_lex);
  const GroupAnalysis a =
      analyze(regular_image(build_pairs_presentation(graph_pairs(bijection_from_cycles(order, "(2,3,4)")))).group);
  CHECK(a.order == 16);
  CHECK(a.nilpotency_class == 1);
  CHECK(a.abelian_invariants == std::vector<std::uint64_t>{4, 4});
}

TEST_CASE("order formatting") {
  CHECK(format_order(1024) == "2^10");
  CHECK(format_order(19683) == "3^9");
  CHECK(format_order(12) == "12");
}

TEST_CASE("overflow surfaces as a capacity error") {
  EnumerationOptions o;
  o.max_cosets = 500;
  CHECK_THROWS_AS(regular_image(parse_presentation("< a,b | a^3, b^3 >"), o), CapacityError);
}

TEST_CASE("identities in chi(A_{2,3})") {
  const AbelianGroup a = AbelianGroup::elementary(2, 3);
  const GroupImage img = regular_image(build_pairs_presentation(chi_full_pairs(a)));
  const ClauseResult ok = verify_identity(img, a, {"[x,x^t]", "1", {"x"}, Quantifier::all_elements});
  CHECK(ok.pass);
  const ClauseResult bad = verify_identity(img, a, {"[x,y^t]", "1", {"x", "y"}, Quantifier::generators});
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.witness.empty());
  CHECK(evaluate_expression(img, "[a1,b1]") == evaluate_expression(img, "1"));
  CHECK(evaluate_expression(img, "[a1,b2]") == evaluate_expression(img, "[b1,a2]"));
}

TEST_CASE("extension checkers") {
  const ExtensionInstance k3 = make_extension_instance(chi_extension_spec(3));
  const GroupAnalysis a = analyze(k3.image.group);
  CHECK(a.order == 1024);
  CHECK(a.nilpotency_class == 3);
  CHECK(a.derived_length == 2);
  CHECK(a.derived_exponent == 4);
  CHECK(check_extension_theorem(k3).pass());
  CHECK(check_rank_theorem(k3).pass());
  const ExtensionInstance toy = make_extension_instance(toy_extension_spec());
  CHECK(check_extension_theorem(toy).pass());
  const AbelianGroup a23 = AbelianGroup::elementary(2, 3);
  const GroupAnalysis chi = analyze(regular_image(build_pairs_presentation(chi_full_pairs(a23))).group);
  CHECK(chi.derived_exponent == 2);
}

TEST_CASE("metabelian quotient bound") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const GroupImage img =
      regular_image(build_pairs_presentation(graph_pairs(bijection_from_cycles(order, "(6,7)"))));
  const Report r = check_metabelian_quotient(img, 8);
  CHECK(r.pass());
  CHECK(r.to_json().find("\"pass\":true") != std::string::npos);
}
