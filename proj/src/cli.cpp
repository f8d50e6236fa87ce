#include "wkc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wkc/doublecosets.hpp"
#include "wkc/error.hpp"

namespace wkc {

using nlohmann::ordered_json;

std::string ResultRecord::to_json(bool with_timing) const {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["version"] = kToolkitVersion;
  j["key"] = key;
  j["tag"] = tag;
  j["params"] = params;
  j["f"] = f;
  j["closed"] = closed;
  j["cosets"] = cosets;
  j["strategy"] = strategy;
  j["order"] = order_text();
  j["order_value"] = order;
  if (nilpotency_class) {
    j["class"] = *nilpotency_class;
  } else {
    j["class"] = nullptr;
  }
  j["derived_length"] = derived_length;
  j["lcs_quotients"] = lcs_quotients;
  j["derived_quotients"] = derived_quotients;
  j["exponent"] = exponent;
  j["exponent_exact"] = exponent_exact;
  j["derived_exponent"] = derived_exponent;
  j["center_order"] = center_order;
  j["abelian_invariants"] = abelian_invariants;
  j["fingerprint"] = fingerprint;
  if (with_timing) j["seconds"] = seconds;
  return j.dump();
}

ResultRecord ResultRecord::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("schema").get<int>() != kSchemaVersion) throw Error("record: unsupported schema");
  ResultRecord r;
  r.key = j.at("key").get<std::string>();
  r.tag = j.at("tag").get<std::string>();
  r.params = j.at("params").get<std::map<std::string, std::string>>();
  r.f = j.at("f").get<std::string>();
  r.closed = j.at("closed").get<bool>();
  r.cosets = j.at("cosets").get<std::size_t>();
  r.strategy = j.at("strategy").get<std::string>();
  r.order = j.at("order_value").get<std::uint64_t>();
  if (!j.at("class").is_null()) r.nilpotency_class = j.at("class").get<int>();
  r.derived_length = j.at("derived_length").get<int>();
  r.lcs_quotients = j.at("lcs_quotients").get<std::vector<std::uint64_t>>();
  r.derived_quotients = j.at("derived_quotients").get<std::vector<std::uint64_t>>();
  r.exponent = j.at("exponent").get<std::uint64_t>();
  r.exponent_exact = j.at("exponent_exact").get<bool>();
  r.derived_exponent = j.at("derived_exponent").get<std::uint64_t>();
  r.center_order = j.at("center_order").get<std::uint64_t>();
  r.abelian_invariants = j.at("abelian_invariants").get<std::vector<std::uint64_t>>();
  r.fingerprint = j.at("fingerprint").get<std::string>();
  if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
  return r;
}

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------------------

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<ResultCache> ResultCache::from_env() {
  const char* dir = std::getenv("WKC_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return ResultCache(dir);
}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(stable_hash(key)));
  return dir_ / name;
}

std::optional<ResultRecord> ResultCache::load(const std::string& key) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(ss.str());
    if (j.at("schema").get<int>() != kSchemaVersion || j.at("version").get<std::string>() != kToolkitVersion) {
      return std::nullopt;
    }
    ResultRecord r = ResultRecord::from_json(ss.str());
    if (r.key != key) return std::nullopt;
    return r;
  } catch (const std::exception& e) {
    std::cerr << "warning: skipping corrupt cache entry " << path.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

void ResultCache::store(const ResultRecord& r) const {
  const auto path = path_for(r.key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cache: cannot write " + tmp.string());
    out << r.to_json() << "\n";
    if (!out) throw Error("cache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------

Task graph_task(const ElementOrder& order, const PointedBijection& f) {
  Task t;
  t.tag = "graph";
  const AbelianGroup& a = order.group();
  t.params["group"] = a.name();
  t.params["mode"] = to_string(order.mode());
  t.f = bijection_to_cycles(order, f);
  t.key = "graph|" + a.name() + "|" + to_string(order.mode()) + "|" + t.f;
  t.build = [f] { return build_pairs_presentation(graph_pairs(f)); };
  return t;
}

Task presentation_task(std::string tag, std::map<std::string, std::string> params, Presentation p) {
  Task t;
  t.tag = std::move(tag);
  t.params = std::move(params);
  t.key = t.tag;
  for (const auto& [k, v] : t.params) t.key += "|" + k + "=" + v;
  t.key += "|" + format_presentation(p);
  t.build = [p = std::move(p)] { return p; };
  return t;
}

ResultRecord run_task(const Task& t, const EnumerationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ResultRecord r;
  r.key = t.key;
  r.tag = t.tag;
  r.params = t.params;
  r.f = t.f;
  const Presentation p = t.build();
  const CosetTable table = todd_coxeter(p, {}, options);
  r.closed = table.closed();
  r.strategy = to_string(table.strategy());
  r.cosets = table.size();
  if (r.closed) {
    const GroupAnalysis a = analyze(RegularGroup::from_table(table));
    r.order = a.order;
    r.nilpotency_class = a.nilpotency_class;
    r.derived_length = a.derived_length;
    r.lcs_quotients = a.lcs_quotients;
    r.derived_quotients = a.derived_quotients;
    r.exponent = a.exponent;
    r.exponent_exact = a.exponent_exact;
    r.derived_exponent = a.derived_exponent;
    r.center_order = a.center_order;
    r.abelian_invariants = a.abelian_invariants;
    r.fingerprint = a.fingerprint();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

BatchOutcome run_batch(const std::vector<Task>& tasks, int jobs, const ResultCache* cache,
                       const EnumerationOptions& options) {
  BatchOutcome out;
  out.records.resize(tasks.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::optional<ResultRecord> hit;
    if (cache != nullptr) hit = cache->load(tasks[i].key);
    if (hit) {
      out.records[i] = std::move(*hit);
      ++out.cache_hits;
    } else {
      todo.push_back(i);
    }
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t n = next.fetch_add(1);
      if (n >= todo.size()) return;
      try {
        out.records[todo[n]] = run_task(tasks[todo[n]], options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs < 1 ? 1 : jobs, 1, std::max<std::size_t>(todo.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  out.enumerations = todo.size();
  if (cache != nullptr) {
    for (std::size_t i : todo) {
      if (out.records[i].closed) cache->store(out.records[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool TableReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::string TableReport::to_text() const {
  std::size_t w0 = 5, w1 = 8, w2 = 8;
  for (const auto& r : rows) {
    w0 = std::max(w0, r.label.size());
    w1 = std::max(w1, r.expected.size());
    w2 = std::max(w2, r.observed.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream out;
  out << "table " << which << " (" << mode << ")\n";
  out << pad("label", w0) << "  " << pad("expected", w1) << "  " << pad("observed", w2) << "  status\n";
  for (const auto& r : rows) {
    out << pad(r.label, w0) << "  " << pad(r.expected, w1) << "  " << pad(r.observed, w2) << "  "
        << (r.pass ? "ok" : "MISMATCH") << "\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  out << (pass() ? "all rows match" : "some rows differ from the expected values") << "\n";
  return out.str();
}

std::string TableReport::to_json() const {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["table"] = which;
  j["mode"] = mode;
  j["pass"] = pass();
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back(ordered_json{{"label", r.label}, {"expected", r.expected}, {"observed", r.observed},
                                     {"pass", r.pass}});
  }
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) j["records"].push_back(ordered_json::parse(r.to_json(false)));
  j["notes"] = notes;
  j["enumerations"] = enumerations;
  return j.dump();
}

namespace {

std::string cd_text(const ResultRecord& r) {
  const std::string c = r.nilpotency_class ? std::to_string(*r.nilpotency_class) : "-";
  return r.order_text() + " c" + c + " d" + std::to_string(r.derived_length);
}

struct Expected {
  std::string f;
  std::string order;
  int c;
  int d;
};

TableReport graph_table(const std::string& which, const ElementOrder& order, const std::vector<Expected>& expected,
                        int jobs, const ResultCache* cache, const EnumerationOptions& options) {
  TableReport rep;
  rep.which = which;
  rep.mode = to_string(order.mode());
  std::vector<Task> tasks;
  for (const auto& e : expected) tasks.push_back(graph_task(order, bijection_from_cycles(order, e.f)));
  BatchOutcome out = run_batch(tasks, jobs, cache, options);
  rep.enumerations = out.enumerations;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& e = expected[i];
    const ResultRecord& r = out.records[i];
    const std::string want = e.order + " c" + std::to_string(e.c) + " d" + std::to_string(e.d);
    rep.rows.push_back({e.f, want, cd_text(r), cd_text(r) == want});
  }
  rep.records = std::move(out.records);
  return rep;
}

}  // namespace

std::vector<PointedBijection> class_representatives(const ElementOrder& order, ActionDomain on,
                                                    std::size_t index_cap) {
  const PermutationGroup u = automorphism_perm_group(order, on);
  const DoubleCosetReport reps = enumerate_reps(u, index_cap);
  std::vector<PointedBijection> out;
  for (const auto& r : reps.representatives) {
    if (on == ActionDomain::lines) {
      out.push_back(line_linear_extension(order, r));
    } else {
      out.push_back(PointedBijection::from_permutation(order, r));
    }
  }
  return out;
}

TableReport run_table(const std::string& which, EnumerationMode mode, int jobs, const ResultCache* cache,
                      const EnumerationOptions& options) {
  if (which == "a23") {
    const ElementOrder order(AbelianGroup::elementary(2, 3), mode);
    return graph_table(which, order,
                       {{"()", "2^10", 3, 2}, {"(6,7)", "2^10", 3, 2}, {"(6,7,8)", "2^8", 2, 2},
                        {"(5,6,7,8)", "2^8", 2, 2}},
                       jobs, cache, options);
  }
  if (which == "a24") {
    const ElementOrder order(AbelianGroup::elementary(2, 4), mode);
    TableReport rep = graph_table(which, order,
                                  {{"()", "2^19", 4, 2},
                                   {"(15,16)", "2^19", 3, 3},
                                   {"(11,14)(15,16)", "2^19", 5, 3},
                                   {"(9,11)(10,13)(12,14)", "2^19", 5, 3},
                                   {"(9,12)(10,13)(11,14)", "2^19", 4, 2}},
                                  jobs, cache, options);
    std::multiset<std::string> want{"2^19 c5 d3", "2^19 c5 d3", "2^19 c4 d2"}, got;
    for (std::size_t i = 2; i < 5; ++i) got.insert(rep.rows[i].observed);
    auto join = [](const std::multiset<std::string>& s) {
      std::string out;
      for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
      return out;
    };
    rep.rows.push_back({"multiset of the last three rows", join(want), join(got), want == got});
    return rep;
  }
  if (which == "a33") {
    const ElementOrder order(AbelianGroup::elementary(3, 3), mode);
    TableReport rep;
    rep.which = which;
    rep.mode = to_string(mode);
    std::vector<Task> tasks;
    for (const auto& f : class_representatives(order, ActionDomain::lines, kDefaultIndexCap)) {
      tasks.push_back(graph_task(order, f));
    }
    tasks.push_back(presentation_task("chi", {{"group", order.group().name()}},
                                      build_pairs_presentation(chi_full_pairs(order.group()))));
    BatchOutcome out = run_batch(tasks, jobs, cache, options);
    rep.enumerations = out.enumerations;
    const ResultRecord chi = out.records.back();
    out.records.pop_back();
    std::map<std::uint64_t, std::size_t> by_order;
    std::size_t bad_order = 0, nonabelian_not_2 = 0, small_nonabelian = 0, top = 0, top_is_chi = 0;
    for (const auto& r : out.records) {
      ++by_order[r.order];
      const bool allowed = r.closed && (r.order == 729 || r.order == 2187 || r.order == 6561 || r.order == 19683);
      if (!allowed) ++bad_order;
      if (!r.abelian() && r.nilpotency_class != 2) ++nonabelian_not_2;
      if (r.order == 729 && !r.abelian()) ++small_nonabelian;
      if (r.order == 19683) {
        ++top;
        if (r.fingerprint == chi.fingerprint) ++top_is_chi;
      }
    }
    std::string hist;
    for (const auto& [o, n] : by_order) hist += (hist.empty() ? "" : ", ") + format_order(o) + " x" + std::to_string(n);
    rep.rows.push_back({"representatives", "252", std::to_string(out.records.size()), out.records.size() == 252});
    rep.rows.push_back({"orders", "3^6, 3^7, 3^8, 3^9", hist, bad_order == 0 && by_order.size() == 4});
    rep.rows.push_back({"groups of order 3^9", "1", std::to_string(top), top == 1});
    rep.rows.push_back({"non-abelian groups not of class 2", "0", std::to_string(nonabelian_not_2),
                        nonabelian_not_2 == 0});
    rep.rows.push_back({"non-abelian groups of order 3^6", "0", std::to_string(small_nonabelian),
                        small_nonabelian == 0});
    rep.rows.push_back({"order-3^9 fingerprint equals chi(A_{3,3})", "1", std::to_string(top_is_chi), top_is_chi == 1});
    rep.notes.push_back("fingerprint agreement is invariant evidence, not an isomorphism proof");
    rep.records = std::move(out.records);
    return rep;
  }
  throw Error("unknown table '" + which + "' (expected a23, a24 or a33)");
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  out << "tag,group,mode,f,closed,order,class,derived_length,exponent,center_order,fingerprint\n";
  auto param = [](const ResultRecord& r, const std::string& k) {
    auto it = r.params.find(k);
    return it == r.params.end() ? std::string() : it->second;
  };
  for (const auto& r : records) {
    out << r.tag << "," << param(r, "group") << "," << param(r, "mode") << ",\"" << r.f << "\"," << r.closed << ","
        << r.order_text() << "," << (r.nilpotency_class ? std::to_string(*r.nilpotency_class) : "") << ","
        << r.derived_length << "," << r.exponent << "," << r.center_order << ",\"" << r.fingerprint << "\"\n";
  }
  return out.str();
}

SanovInstance random_sanov_instance(const AbelianGroup& h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t n = h.order();
  std::vector<std::uint64_t> f(n);
  std::iota(f.begin(), f.end(), 0);
  std::shuffle(f.begin() + 1, f.end(), rng);
  std::uniform_int_distribution<std::uint64_t> any(0, n - 1);
  CodeTable a(n, 0), b(n, 0);
  for (std::uint64_t x = 1; x < n; ++x) {
    a[x] = any(rng);
    b[x] = any(rng);
  }
  return {PointedBijection(h, h, std::move(f)), std::move(a), std::move(b)};
}

std::optional<FieldInverseExpectation> field_inverse_expectation(int q) {
  switch (q) {
    case 8: return FieldInverseExpectation{"2^8", 2};
    case 16: return FieldInverseExpectation{"2^11", 2};
    case 27: return FieldInverseExpectation{"3^6", 1};
    case 5: return FieldInverseExpectation{"5^2", 1};
    case 7: return FieldInverseExpectation{"7^2", 1};
    case 11: return FieldInverseExpectation{"11^2", 1};
    default: return std::nullopt;
  }
}

}  // namespace wkc
