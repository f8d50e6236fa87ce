#include "doctest.h"
#include "json.hpp"
#include "wkc/polymat.hpp"

using namespace wkc;

TEST_CASE("polynomial printing and arithmetic") {
  const Poly x = Poly::x(), y = Poly::y(), w = Poly::w();
  CHECK((Poly(4) * (-x - y + w)).to_string() == "-4x - 4y + 4w");
  CHECK(Poly(0).to_string() == "0");
  CHECK((x - x).is_zero());
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * x * y).to_string() == "x^2y");
}

TEST_CASE("matrix operations") {
  const auto g = build_representation();
  const PolyMatrix id = PolyMatrix::identity();
  CHECK(id * g[0] == g[0]);
  CHECK(mat_op(MatOp::mul, g[0], g[0]) == id);
  CHECK(mat_op(MatOp::inv, g[0]) == g[0]);
  for (const auto& m : g) {
    CHECK(m.is_affine());
    CHECK(mat_inverse(m) * m == id);
  }
  PolyMatrix bad = id;
  bad.at(0, 0) = Poly::x();
  CHECK_FALSE(bad.is_affine());
  CHECK_THROWS(mat_inverse(bad));
}

TEST_CASE("displayed generator rows") {
  const auto g = build_representation();
  const Poly x = Poly::x(), y = Poly::y(), w = Poly::w();
  const std::array<Poly, 5> a1{x, -x, y, y, Poly(1)};
  const std::array<Poly, 5> b3{w, y, y, w, Poly(1)};
  for (int c = 0; c < 5; ++c) {
    CHECK(g[0].at(4, c) == a1[c]);
    CHECK(g[5].at(4, c) == b3[c]);
  }
}

TEST_CASE("representation report") {
  const RepresentationReport r = verify_representation();
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.pass);
  }
  CHECK(r.pass());
  CHECK(r.z == Poly(4) * (-Poly::x() - Poly::y() + Poly::w()));
  CHECK(r.rank_certificate == r.z * r.z * r.z * r.z);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["pass"] == true);
  CHECK(j["z"] == "-4x - 4y + 4w");
}

TEST_CASE("determinant") {
  const Poly x = Poly::x(), y = Poly::y();
  CHECK(determinant({{x, y}, {y, x}}) == x * x - y * y);
  CHECK(determinant({{Poly(2)}}) == Poly(2));
  CHECK(determinant({{Poly(1), Poly(2)}, {Poly(2), Poly(4)}}).is_zero());
}
