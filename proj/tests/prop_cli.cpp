#include <filesystem>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "wkc/cli.hpp"

using namespace wkc;
namespace fs = std::filesystem;

namespace {

std::vector<Task> random_tasks(const ElementOrder& order, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> images(order.size() - 1);
    std::iota(images.begin(), images.end(), 2);
    std::shuffle(images.begin(), images.end(), rng);
    tasks.push_back(graph_task(order, bijection_from_images(order, images)));
  }
  return tasks;
}

}  // namespace

TEST_CASE("property: batches are independent of the job count") {
  const ElementOrder order(AbelianGroup::elementary(3, 2), EnumerationMode::graded_lex);
  const auto tasks = random_tasks(order, 12, 7);
  const BatchOutcome one = run_batch(tasks, 1, nullptr);
  const BatchOutcome two = run_batch(tasks, 2, nullptr);
  const BatchOutcome four = run_batch(tasks, 4, nullptr);
  REQUIRE(one.records.size() == tasks.size());
  CHECK(one.enumerations == tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CHECK(one.records[i].key == tasks[i].key);
    CHECK(one.records[i].to_json(false) == two.records[i].to_json(false));
    CHECK(one.records[i].to_json(false) == four.records[i].to_json(false));
  }
}

TEST_CASE("property: records agree with brute-force analysis") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const auto tasks = random_tasks(order, 5, 8);
  const BatchOutcome out = run_batch(tasks, 2, nullptr);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const CosetTable t = todd_coxeter(tasks[i].build());
    REQUIRE(t.closed());
    std::vector<oracle::Perm> gens;
    const PermutationGroup image = perm_image(t, true);
    for (const auto& g : image.generators()) gens.emplace_back(g.images().begin(), g.images().end());
    const oracle::Structure want = oracle::analyze(gens, t.size());
    const ResultRecord& r = out.records[i];
    CHECK(r.order == want.order);
    CHECK(r.nilpotency_class.value_or(-1) == want.nilpotency_class);
    CHECK(r.derived_length == want.derived_length);
    CHECK(r.center_order == want.center);
    CHECK(r.exponent == want.exponent);
  }
}

TEST_CASE("property: warm cache answers every task") {
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() / ("wkc-prop-" + std::to_string(rd()));
  fs::create_directories(dir);
  {
    const ResultCache cache(dir);
    const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
    auto tasks = random_tasks(order, 6, 9);
    tasks.push_back(tasks.front());  // duplicate key
    const BatchOutcome cold = run_batch(tasks, 2, &cache);
    CHECK(cold.cache_hits + cold.enumerations == tasks.size());
    const BatchOutcome warm = run_batch(tasks, 2, &cache);
    CHECK(warm.enumerations == 0);
    CHECK(warm.cache_hits == tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      CHECK(warm.records[i].to_json(false) == cold.records[i].to_json(false));
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("property: random Sanov instances respect the identity") {
  for (const AbelianGroup& h : {AbelianGroup::elementary(2, 2), AbelianGroup::elementary(3, 2), AbelianGroup({4, 2})}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SanovInstance s = random_sanov_instance(h, seed);
      CHECK(s.f.image_code(0) == 0);
      CHECK(s.a[0] == 0);
      CHECK(s.b[0] == 0);
      std::set<std::uint64_t> image(s.f.table().begin(), s.f.table().end());
      CHECK(image.size() == h.order());
      const SanovInstance again = random_sanov_instance(h, seed);
      CHECK(again.f == s.f);
      CHECK(again.a == s.a);
      CHECK(again.b == s.b);
    }
  }
}

TEST_CASE("property: hashes of distinct keys differ") {
  std::set<std::uint64_t> seen;
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  std::set<std::string> keys;
  for (const auto& t : random_tasks(order, 200, 10)) keys.insert(t.key);
  for (const auto& k : keys) seen.insert(stable_hash(k));
  CHECK(seen.size() == keys.size());
}
