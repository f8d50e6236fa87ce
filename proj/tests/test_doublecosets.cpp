#include "doctest.h"
#include "json.hpp"
#include "wkc/abelian.hpp"
#include "wkc/doublecosets.hpp"

using namespace wkc;

namespace {

PermutationGroup sl32() {
  return build_group(7, {Permutation::from_cycles("(1,6,3,5,4,7,2)", 7), Permutation::from_cycles("(1,7,6)(2,3,5)", 7)});
}

}  // namespace

TEST_CASE("Burnside counts") {
  CHECK(sl32().order() == 168);
  CHECK(count_burnside(sl32()) == 4);
  const ElementOrder a24(AbelianGroup::elementary(2, 4), EnumerationMode::graded_lex);
  CHECK(count_burnside(automorphism_perm_group(a24, ActionDomain::elements)) == 3374);
  const ElementOrder a33(AbelianGroup::elementary(3, 3), EnumerationMode::graded_lex);
  CHECK(count_burnside(automorphism_perm_group(a33, ActionDomain::lines)) == 252);
}

TEST_CASE("trivial and full subgroups") {
  CHECK(count_burnside(build_group(4, {})) == 24);
  const PermutationGroup s4 =
      build_group(4, {Permutation::from_cycles("(1,2)", 4), Permutation::from_cycles("(1,2,3,4)", 4)});
  CHECK(count_burnside(s4) == 1);
  CHECK(enumerate_reps(s4).representatives == std::vector<Permutation>{Permutation::identity(4)});
}

TEST_CASE("representatives of SL(3,2)") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const PermutationGroup u = automorphism_perm_group(order, ActionDomain::elements);
  const DoubleCosetReport r = enumerate_reps(u);
  CHECK(r.count == 4);
  CHECK(r.method == DoubleCosetMethod::orbit_enumeration);
  std::uint64_t total = 0;
  for (auto s : r.sizes) total += s;
  CHECK(total == 5040);
  const auto j = nlohmann::json::parse(r.to_json("SL(3,2)"));
  CHECK(j["count"] == 4);
  CHECK(j["representatives"].size() == 4);
}

TEST_CASE("the listed representatives are pairwise distinct classes") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const PermutationGroup u = automorphism_perm_group(order, ActionDomain::elements);
  std::vector<Permutation> listed;
  for (const char* c : {"()", "(6,7)", "(6,7,8)", "(5,6,7,8)"}) {
    listed.push_back(bijection_from_cycles(order, c).as_permutation(order));
  }
  for (std::size_t i = 0; i < listed.size(); ++i) {
    for (std::size_t j = 0; j < listed.size(); ++j) {
      CHECK(same_double_coset(u, listed[i], listed[j]).has_value() == (i == j));
    }
  }
}

TEST_CASE("witnesses are genuine") {
  const PermutationGroup u = sl32();
  const Permutation f = Permutation::from_cycles("(4,5)", 7);
  const Permutation g = Permutation::from_cycles("(1,2)", 7);
  const auto w = same_double_coset(u, f, g);
  REQUIRE(w.has_value());
  CHECK(u.contains(w->a));
  CHECK(u.contains(w->b));
  CHECK(w->a * f * w->b == g);
  CHECK_FALSE(same_double_coset(u, Permutation::identity(7), f).has_value());
}

TEST_CASE("capacity limits") {
  const ElementOrder a24(AbelianGroup::elementary(2, 4), EnumerationMode::graded_lex);
  CHECK_THROWS_AS(enumerate_reps(automorphism_perm_group(a24, ActionDomain::elements)), CapacityError);
}
