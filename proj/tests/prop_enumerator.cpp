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

// A closed table is complete and every relator closes up from every coset.
bool table_is_valid(const CosetTable& t, const Presentation& p) {
  for (std::uint32_t c = 0; c < t.size(); ++c) {
    for (std::uint32_t col = 0; col < t.column_count(); ++col) {
      if (t.at(c, col) == CosetTable::kUndefined) return false;
    }
    for (const auto& w : p.relator_words()) {
      if (t.trace(c, w) != c) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("property: strategies agree and tables are valid") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : {std::pair{2, 3}, {3, 2}}) {
    const ElementOrder order(AbelianGroup::elementary(p, k), EnumerationMode::graded_lex);
    for (int t = 0; t < 8; ++t) {
      const Presentation pres = build_pairs_presentation(graph_pairs(random_bijection(order, rng)));
      EnumerationOptions felsch, hlt;
      felsch.strategy = Strategy::felsch;
      hlt.strategy = Strategy::hlt;
      const CosetTable a = todd_coxeter(pres, {}, felsch);
      const CosetTable b = todd_coxeter(pres, {}, hlt);
      REQUIRE(a.closed());
      REQUIRE(b.closed());
      CHECK(a.size() == b.size());
      CHECK(table_is_valid(a, pres));
      CHECK(table_is_valid(b, pres));
      CHECK(perm_image(a, true).order() == a.size());
    }
  }
}

TEST_CASE("property: shuffled relators give the same order") {
  std::mt19937_64 rng(12);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  for (int t = 0; t < 6; ++t) {
    Presentation p = build_pairs_presentation(graph_pairs(random_bijection(order, rng)));
    const std::size_t n = todd_coxeter(p).size();
    std::shuffle(p.relators.begin(), p.relators.end(), rng);
    CHECK(todd_coxeter(p).size() == n);
  }
}

TEST_CASE("property: subgroup indices divide the order") {
  std::mt19937_64 rng(13);
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  for (int i = 0; i < 6; ++i) {
    const Presentation p = build_pairs_presentation(graph_pairs(random_bijection(order, rng)));
    const std::size_t n = todd_coxeter(p).size();
    const std::vector<GroupWord> sub{GroupWord::generator(static_cast<std::uint32_t>(rng() % 6))};
    const CosetTable t = todd_coxeter(p, sub);
    REQUIRE(t.closed());
    CHECK(n % t.size() == 0);
    CHECK(table_is_valid(t, p));
  }
}
