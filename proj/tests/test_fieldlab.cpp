#include "doctest.h"
#include "wkc/fieldlab.hpp"
#include "wkc/structure.hpp"

using namespace wkc;

TEST_CASE("field arithmetic examples") {
  const FiniteField f8(2, 3);
  CHECK(f8.modulus() == std::vector<int>{1, 1, 0, 1});
  const auto g = f8.root();
  CHECK(f8.mul(g, f8.pow(g, 6)) == 1);
  CHECK(f8.multiplicative_order(g) == 7);
  CHECK(f8.inv(0) == 0);
  const FiniteField f5(5, 1);
  CHECK(f5.inv(2) == 3);
  CHECK(field_op(f5, FieldOp::inv, 2) == 3);
  CHECK(field_op(f5, FieldOp::pow, 2, 4) == 1);
  CHECK(field_op(f8, FieldOp::add, 3, 5) == 6);
  CHECK(FiniteField::of_order(27).degree() == 3);
  CHECK(f8.format(g) == "[0,1,0]");
  CHECK_THROWS(FiniteField(7, 3));
}

TEST_CASE("moduli table") {
  CHECK(FiniteField(2, 2).modulus() == std::vector<int>{1, 1, 1});
  CHECK(FiniteField(2, 4).modulus() == std::vector<int>{1, 1, 0, 0, 1});
  CHECK(FiniteField(2, 5).modulus() == std::vector<int>{1, 0, 1, 0, 0, 1});
  CHECK(FiniteField(3, 2).modulus() == std::vector<int>{1, 0, 1});
  CHECK(FiniteField(3, 3).modulus() == std::vector<int>{1, 2, 0, 1});
}

TEST_CASE("orbit basics") {
  const FiniteField f(2, 3);
  const PointedBijection inv = field_inverse_bijection(f);
  const OrbitRecord fixed = alphabeta_orbit(inv, {0, 0});
  CHECK(fixed.length() == 1);
  std::size_t total = 0;
  for (const auto& o : orbit_partition(inv)) total += o.length();
  CHECK(total == 64);
}

TEST_CASE("Lemma 11 values") {
  CHECK(check_lemma11_rational(1).pass);
  CHECK(check_lemma11_wilson(5, 2).pass);
  CHECK(lemma11_wilson_value(5, 2) == std::pair<long long, long long>{0, 2});
  CHECK(check_lemma11_wilson(7, 3).pass);
  CHECK(lemma11_wilson_value(7, 3) == std::pair<long long, long long>{0, 4});
  CHECK(check_lemma11_modp(7, 2, 3).pass);
  CHECK(check_lemma11_modp(5, 3, 1).skipped);
}

TEST_CASE("Lemma 12 and 13 checks") {
  CHECK(check_lemma12(FiniteField(3, 2), 1, 1).pass);
  CHECK(check_lemma12(FiniteField(3, 2), 1, 2).pass);
  CHECK(check_lemma12(FiniteField(5, 2), 2, 3, 100).pass);
  const FiniteField f9(3, 2);
  CHECK_FALSE(in_lemma12_domain(f9, 1, 2));
  CHECK_FALSE(in_lemma12_domain(f9, 0, 3));

  const Char2Report r8 = check_char2(FiniteField(2, 3));
  CHECK(r8.involutions);
  CHECK(r8.closed_form);
  CHECK(r8.hypothesis_prime);
  CHECK(r8.generator_property);
  const Char2Report r16 = check_char2(FiniteField(2, 4));
  CHECK(r16.involutions);
  CHECK(r16.closed_form);
  CHECK_FALSE(r16.hypothesis_prime);
  CHECK_FALSE(r16.generator_property);
  CHECK(r16.generator_failures > 0);
}

TEST_CASE("anti-additivity examples") {
  CHECK(anti_additive_check(FiniteField(2, 3)).pass);
  const AntiAdditive a4 = anti_additive_check(FiniteField(2, 2));
  CHECK_FALSE(a4.pass);
  REQUIRE(a4.counterexample);
  const FiniteField f4(2, 2);
  const auto [x, y] = *a4.counterexample;
  CHECK(f4.inv(f4.add(x, y)) == f4.add(f4.inv(x), f4.inv(y)));
  CHECK(anti_additive_check(FiniteField(5, 1)).pass);
}

TEST_CASE("extension orbit census") {
  const OrbitCensus c3 = classify_extension_orbits(3);
  CHECK(c3.total_pairs == 64);
  CHECK(c3.orbits == 15);
  CHECK(c3.type_i == 3);
  CHECK(c3.type_ii == 3);
  CHECK(c3.type_iii == 1);
  CHECK(c3.degenerate == 8);
  CHECK(c3.unmatched == 0);
  for (std::size_t i = 0; i < c3.lengths.size(); ++i) {
    if (c3.types[i] != OrbitType::degenerate) CHECK(c3.lengths[i] == 6);
  }
  const OrbitCensus c4 = classify_extension_orbits(4);
  CHECK(c4.total_pairs == 256);
  CHECK(c4.orbits == 51);
  CHECK(c4.unmatched == 0);
}

TEST_CASE("field-inverse groups of prime fields are F x F") {
  for (int p : {5, 7}) {
    const FiniteField f(p, 1);
    const GroupAnalysis a = analyze(regular_image(field_inverse_presentation(f)).group);
    CHECK(a.order == static_cast<std::uint64_t>(p * p));
    CHECK(a.nilpotency_class == 1);
  }
  const GroupAnalysis a8 = analyze(regular_image(field_inverse_presentation(FiniteField(2, 3))).group);
  CHECK(a8.order == 256);
  CHECK(a8.nilpotency_class == 2);
}
