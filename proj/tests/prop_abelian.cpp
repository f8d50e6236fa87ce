#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "wkc/abelian.hpp"

using namespace wkc;

namespace {

// |GL(k,p)| by brute force: count k x k matrices with independent rows.
std::uint64_t count_invertible(int p, int k) {
  const AbelianGroup a = AbelianGroup::elementary(p, k);
  std::uint64_t count = 0;
  std::vector<AbelianElement> rows(k);
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= a.order();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < k; ++i) {
      rows[i] = a.element(c % a.order());
      c /= a.order();
    }
    if (rank_mod_p(rows, p) == static_cast<std::size_t>(k)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("property: GL orders") {
  for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
    CHECK(gl_order(p, k) == count_invertible(p, k));
    const ElementOrder order(AbelianGroup::elementary(p, k), EnumerationMode::graded_lex);
    CHECK(automorphism_perm_group(order, ActionDomain::elements).order() == count_invertible(p, k));
  }
}

TEST_CASE("property: code and element are inverse") {
  const AbelianGroup a({2, 3, 4, 5});
  for (std::uint64_t c = 0; c < a.order(); ++c) {
    const AbelianElement x = a.element(c);
    CHECK(a.code(x) == c);
    CHECK(combine(a, x, a.negate(x)) == a.identity());
    CHECK(a.element_order(x) >= 1);
  }
}

TEST_CASE("property: random bijections survive every encoding") {
  std::mt19937_64 rng(3);
  for (auto [p, k] : {std::pair{2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
    for (auto mode : {EnumerationMode::graded_lex, EnumerationMode::plain_lex}) {
      const ElementOrder order(AbelianGroup::elementary(p, k), mode);
      for (int t = 0; t < 20; ++t) {
        std::vector<std::size_t> images(order.size() - 1);
        std::iota(images.begin(), images.end(), 2);
        std::shuffle(images.begin(), images.end(), rng);
        const PointedBijection f = bijection_from_images(order, images);
        CHECK(bijection_to_images(order, f) == images);
        CHECK(bijection_from_cycles(order, bijection_to_cycles(order, f)) == f);
        CHECK(PointedBijection::from_permutation(order, f.as_permutation(order)) == f);
        CHECK(f.inverse().inverse() == f);
        for (const auto& x : order.elements()) CHECK(f.preimage(f(x)) == x);
      }
    }
  }
}

TEST_CASE("property: line-linear extensions preserve powers") {
  std::mt19937_64 rng(4);
  const ElementOrder order(AbelianGroup::elementary(3, 3), EnumerationMode::graded_lex);
  const AbelianGroup& a = order.group();
  for (int t = 0; t < 30; ++t) {
    std::vector<Point> v(13);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    const PointedBijection f = line_linear_extension(order, Permutation(v));
    for (const auto& x : order.elements()) {
      CHECK(f(combine(a, a.identity(), x, 2)) == combine(a, a.identity(), f(x), 2));
    }
  }
}

TEST_CASE("property: matrix action is a homomorphism") {
  std::mt19937_64 rng(5);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const auto gens = gl_generators(2, 3);
  for (int t = 0; t < 20; ++t) {
    const ModMatrix m = gens[rng() % 2] * gens[rng() % 2];
    const ModMatrix n = gens[rng() % 2];
    CHECK(matrix_action(order, m * n) == matrix_action(order, m) * matrix_action(order, n));
  }
}
