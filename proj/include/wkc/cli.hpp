#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wkc/abelian.hpp"
#include "wkc/enumerator.hpp"
#include "wkc/presentation.hpp"
#include "wkc/structure.hpp"

namespace wkc {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolkitVersion = "0.3.0";

/// One classified group. Everything except `seconds` is deterministic for a
/// fixed key and toolkit version.
struct ResultRecord {
  std::string key;
  std::string tag;
  std::map<std::string, std::string> params;
  std::string f;  // canonical cycle form, empty when not a graph construction
  bool closed = false;
  std::size_t cosets = 0;
  std::string strategy;
  std::uint64_t order = 0;
  std::optional<int> nilpotency_class;
  int derived_length = 0;
  std::vector<std::uint64_t> lcs_quotients;
  std::vector<std::uint64_t> derived_quotients;
  std::uint64_t exponent = 0;
  bool exponent_exact = true;
  std::uint64_t derived_exponent = 0;
  std::uint64_t center_order = 0;
  std::vector<std::uint64_t> abelian_invariants;
  std::string fingerprint;
  double seconds = 0;

  std::string order_text() const { return closed ? format_order(order) : "overflow"; }
  bool abelian() const { return closed && nilpotency_class && *nilpotency_class <= 1; }

  std::string to_json(bool with_timing = true) const;
  static ResultRecord from_json(const std::string& text);
};

/// FNV-1a, used for cache file names.
std::uint64_t stable_hash(const std::string& s);

/// Directory of one JSON file per record. Writes go through a temporary file
/// and a rename, so readers never see a partial record.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  /// Cache directory from WKC_CACHE_DIR, if set.
  static std::optional<ResultCache> from_env();

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<ResultRecord> load(const std::string& key) const;
  void store(const ResultRecord& r) const;

 private:
  std::filesystem::path path_for(const std::string& key) const;
  std::filesystem::path dir_;
};

struct Task {
  std::string key;
  std::string tag;
  std::map<std::string, std::string> params;
  std::string f;
  std::function<Presentation()> build;
};

/// G(A;f) for A = order.group().
Task graph_task(const ElementOrder& order, const PointedBijection& f);
Task presentation_task(std::string tag, std::map<std::string, std::string> params, Presentation p);

ResultRecord run_task(const Task& t, const EnumerationOptions& options);

struct BatchOutcome {
  std::vector<ResultRecord> records;  // parallel to the tasks
  std::size_t enumerations = 0;
  std::size_t cache_hits = 0;
};

/// Runs tasks on `jobs` worker threads pulling from a shared counter. Workers
/// only compute; cache lookups and stores stay on the calling thread.
BatchOutcome run_batch(const std::vector<Task>& tasks, int jobs, const ResultCache* cache,
                       const EnumerationOptions& options = {});

// ---------------------------------------------------------------------------

struct CheckRow {
  std::string label;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct TableReport {
  std::string which;
  std::string mode;
  std::vector<CheckRow> rows;
  std::vector<ResultRecord> records;
  std::vector<std::string> notes;
  std::size_t enumerations = 0;

  bool pass() const;
  std::string to_text() const;
  std::string to_json() const;
};

/// a23, a24 or a33 reproduced with the given enumeration convention.
TableReport run_table(const std::string& which, EnumerationMode mode, int jobs, const ResultCache* cache,
                      const EnumerationOptions& options = {});

/// Double-coset representatives for A_{p,k}: U = Aut(A) on A# (elements) or
/// PGL on the lines, each turned into a bijection of A#.
std::vector<PointedBijection> class_representatives(const ElementOrder& order, ActionDomain on,
                                                    std::size_t index_cap);

std::string records_to_csv(const std::vector<ResultRecord>& records);

/// Random identity-fixing f and identity-respecting tables a: H -> K, b: H -> H
/// on H = K = `a`.
struct SanovInstance {
  PointedBijection f;
  CodeTable a;
  CodeTable b;
};

SanovInstance random_sanov_instance(const AbelianGroup& h, std::uint64_t seed);

/// Orders and classes stated for the field-inverse groups G(F; x -> 1/x).
struct FieldInverseExpectation {
  std::string order;
  std::optional<int> nilpotency_class;  // 1 for the abelian cases
};

std::optional<FieldInverseExpectation> field_inverse_expectation(int q);

}  // namespace wkc
