#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "wkc/cli.hpp"

using namespace wkc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("wkc-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ElementOrder a23() { return ElementOrder(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex); }

}  // namespace

TEST_CASE("record JSON round trip") {
  const ElementOrder o = a23();
  const ResultRecord r = run_task(graph_task(o, bijection_from_cycles(o, "(6,7)")), {});
  CHECK(r.closed);
  CHECK(r.order_text() == "2^10");
  CHECK(r.nilpotency_class == 3);
  const ResultRecord back = ResultRecord::from_json(r.to_json());
  CHECK(back.to_json() == r.to_json());
  const auto j = nlohmann::json::parse(r.to_json(false));
  CHECK_FALSE(j.contains("seconds"));
  CHECK(j["f"] == "(6,7)");
}

TEST_CASE("cache hit, miss and corrupt entry") {
  TempDir dir;
  const ResultCache cache(dir.path);
  const ElementOrder o = a23();
  const Task t = graph_task(o, bijection_from_cycles(o, "(6,7,8)"));
  CHECK_FALSE(cache.load(t.key));
  const ResultRecord r = run_task(t, {});
  cache.store(r);
  const auto hit = cache.load(t.key);
  REQUIRE(hit);
  CHECK(hit->to_json() == r.to_json());

  const Task other = graph_task(o, bijection_from_cycles(o, "(5,6,7,8)"));
  CHECK_FALSE(cache.load(other.key));

  for (const auto& e : fs::directory_iterator(dir.path)) {
    std::ofstream(e.path(), std::ios::trunc) << "{ not json";
  }
  CHECK_FALSE(cache.load(t.key));
}

TEST_CASE("stable hash") {
  CHECK(stable_hash("") == 14695981039346656037ull);
  CHECK(stable_hash("a") == 12638187200555641996ull);
  CHECK(stable_hash("graph|x") != stable_hash("graph|y"));
}

TEST_CASE("a23 table passes and the warm cache skips enumeration") {
  TempDir dir;
  const ResultCache cache(dir.path);
  const TableReport cold = run_table("a23", EnumerationMode::graded_lex, 1, &cache);
  CHECK(cold.pass());
  CHECK(cold.enumerations == 4);
  const TableReport warm = run_table("a23", EnumerationMode::graded_lex, 1, &cache);
  CHECK(warm.pass());
  CHECK(warm.enumerations == 0);
  CHECK(nlohmann::json::parse(warm.to_json())["pass"] == true);
}

TEST_CASE("field-inverse expectations") {
  CHECK(field_inverse_expectation(8)->order == "2^8");
  CHECK(field_inverse_expectation(8)->nilpotency_class == 2);
  CHECK(field_inverse_expectation(16)->order == "2^11");
  CHECK(field_inverse_expectation(27)->order == "3^6");
  CHECK(field_inverse_expectation(27)->nilpotency_class == 1);
  CHECK(field_inverse_expectation(7)->order == "7^2");
  CHECK_FALSE(field_inverse_expectation(32));
}

TEST_CASE("csv output") {
  const ElementOrder o = a23();
  const ResultRecord r = run_task(graph_task(o, identity_bijection(o.group())), {});
  const std::string csv = records_to_csv({r});
  CHECK(csv.find('\n') != std::string::npos);
  CHECK(csv.find("2^10") != std::string::npos);
}
