#include <numeric>
#include <random>

#include "doctest.h"
#include "wkc/enumerator.hpp"
#include "wkc/presentation.hpp"

using namespace wkc;

namespace {

PointedBijection random_bijection(const ElementOrder& order, std::mt19937_64& rng) {
  std::vector<std::size_t> images(order.size() - 1);
  std::iota(images.begin(), images.end(), 2);
  std::shuffle(images.begin(), images.end(), rng);
  return bijection_from_images(order, images);
}

}  // namespace

TEST_CASE("property: printed presentations parse back") {
  std::mt19937_64 rng(6);
  const ElementOrder order(AbelianGroup::elementary(3, 2), EnumerationMode::graded_lex);
  for (int t = 0; t < 20; ++t) {
    const Presentation p = build_pairs_presentation(graph_pairs(random_bijection(order, rng)));
    const std::string text = format_presentation(p);
    CHECK(format_presentation(parse_presentation(text)) == text);
    CHECK(parse_presentation(text).relator_words() == p.relator_words());
  }
}

TEST_CASE("property: relators are never empty words") {
  std::mt19937_64 rng(7);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  for (int t = 0; t < 20; ++t) {
    for (const auto& w : build_pairs_presentation(graph_pairs(random_bijection(order, rng))).relator_words()) {
      CHECK_FALSE(w.empty());
    }
  }
}

TEST_CASE("property: sanov with a = f, b = id matches the graph group") {
  std::mt19937_64 rng(8);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const AbelianGroup& a = order.group();
  CodeTable id(a.order());
  std::iota(id.begin(), id.end(), 0);
  for (int t = 0; t < 5; ++t) {
    const PointedBijection f = random_bijection(order, rng);
    const Presentation s = build_sanov(a, a, f, f.table(), id);
    const Presentation g = build_pairs_presentation(graph_pairs(f));
    CHECK(todd_coxeter(s).size() == todd_coxeter(g).size());
  }
}

TEST_CASE("property: swapping the roles of A and B keeps the order") {
  std::mt19937_64 rng(9);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  for (int t = 0; t < 5; ++t) {
    const PointedBijection f = random_bijection(order, rng);
    const PointedBijection g = f.inverse();
    CHECK(todd_coxeter(build_pairs_presentation(graph_pairs(f))).size() ==
          todd_coxeter(build_pairs_presentation(graph_pairs(g))).size());
  }
}

TEST_CASE("property: twisting by automorphisms keeps the order") {
  std::mt19937_64 rng(10);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const auto gens = gl_generators(2, 3);
  for (int t = 0; t < 5; ++t) {
    const PointedBijection f = random_bijection(order, rng);
    const Permutation a = matrix_action(order, gens[rng() % 2]);
    const Permutation b = matrix_action(order, gens[rng() % 2] * gens[rng() % 2]);
    const PointedBijection g = PointedBijection::from_permutation(order, a * f.as_permutation(order) * b);
    CHECK(todd_coxeter(build_pairs_presentation(graph_pairs(f))).size() ==
          todd_coxeter(build_pairs_presentation(graph_pairs(g))).size());
  }
}
