#include "doctest.h"
#include "oracle.hpp"
#include "wkc/perm.hpp"

using namespace wkc;

namespace {

oracle::Perm raw(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

}  // namespace

TEST_CASE("cycle notation round trip") {
  const Permutation p = Permutation::from_cycles("(2,7,4,6,5,8,3)", 8);
  CHECK(p.to_cycles() == "(2,7,4,6,5,8,3)");
  CHECK(p[1] == 6);
  CHECK(Permutation::identity(5).to_cycles() == "()");
  CHECK(Permutation::from_cycles("()", 3).is_identity());
  CHECK(Permutation::from_cycles("(1,2)(3,4,5)", 5).order() == 6);
}

TEST_CASE("malformed cycles are rejected") {
  CHECK_THROWS_AS(Permutation::from_cycles("(1,9)", 8), Error);
  CHECK_THROWS_AS(Permutation::from_cycles("(1,2,1)", 8), Error);
  CHECK_THROWS_AS(Permutation::from_cycles("(1,2", 8), Error);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0}), Error);
}

TEST_CASE("products act on the right") {
  const Permutation p = Permutation::from_cycles("(1,2)", 3);
  const Permutation q = Permutation::from_cycles("(2,3)", 3);
  // 1 -> 2 under p, then 2 -> 3 under q.
  CHECK((p * q)[0] == 2);
  CHECK(raw(p * q) == oracle::mul(raw(p), raw(q)));
  CHECK(commutator(p, q) == p.inverse() * q.inverse() * p * q);
  CHECK(conjugate(p, q) == Permutation::from_cycles("(1,3)", 3));
}

TEST_CASE("SL(3,2) on seven points") {
  const Permutation a = Permutation::from_cycles("(2,7,4,6,5,8,3)", 8);
  const Permutation b = Permutation::from_cycles("(2,8,7)(3,4,6)", 8);
  const PermutationGroup g = build_group(8, {a, b});
  CHECK(g.order() == 168);
  CHECK(g.order() == oracle::closure({raw(a), raw(b)}, 8).size());
  CHECK(g.contains(a * b * a));
  CHECK_FALSE(g.contains(Permutation::from_cycles("(2,3)", 8)));
}

TEST_CASE("orbits") {
  const Permutation a = Permutation::from_cycles("(1,2)(4,5)", 6);
  const auto o = orbits(std::vector<Permutation>{a}, 6);
  REQUIRE(o.size() == 4);
  CHECK(o[0] == std::vector<Point>{0, 1});
  CHECK(o[2] == std::vector<Point>{3, 4});
}

TEST_CASE("commutator subgroup of S4 is A4") {
  const Permutation a = Permutation::from_cycles("(1,2)", 4);
  const Permutation b = Permutation::from_cycles("(1,2,3,4)", 4);
  const PermutationGroup s4 = build_group(4, {a, b});
  CHECK(commutator_subgroup(s4, s4).order() == 12);
}
