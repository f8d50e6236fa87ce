#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "wkc/cli.hpp"
#include "wkc/combinat.hpp"
#include "wkc/doublecosets.hpp"
#include "wkc/error.hpp"
#include "wkc/fieldlab.hpp"
#include "wkc/polymat.hpp"

using namespace wkc;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kCheckFailed = 2;

struct GroupArgs {
  int p = 2;
  int k = 3;
  std::string mode = "graded-lex";
  std::string f;
  std::string f_file;
};

void add_group_args(CLI::App* cmd, GroupArgs& g, bool with_f) {
  cmd->add_option("--p", g.p, "prime p of A_{p,k}")->check(CLI::Range(2, 97));
  cmd->add_option("--k", g.k, "rank k of A_{p,k}")->check(CLI::Range(1, 8));
  cmd->add_option("--mode", g.mode, "element enumeration: graded-lex or plain-lex");
  if (with_f) {
    cmd->add_option("--f", g.f, "bijection in cycle notation on positions, e.g. \"(6,7)\"");
    cmd->add_option("--f-file", g.f_file, "bijection as an f-file (JSON)");
  }
}

ElementOrder make_order(const GroupArgs& g) {
  return ElementOrder(AbelianGroup::elementary(g.p, g.k), parse_mode(g.mode));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PointedBijection make_f(const ElementOrder& order, const GroupArgs& g) {
  if (!g.f_file.empty()) {
    PointedBijection f = bijection_from_json(read_file(g.f_file));
    if (!(f.domain() == order.group())) throw Error("f-file group does not match --p/--k");
    return f;
  }
  return bijection_from_cycles(order, g.f.empty() ? "()" : g.f);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw Error("cannot write " + output);
  out << text;
}

std::optional<ResultCache> open_cache(const std::string& dir) {
  if (!dir.empty()) return ResultCache(dir);
  return ResultCache::from_env();
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << r.name << ": " << (r.pass() ? "pass" : "FAIL") << "\n";
  for (const auto& c : r.clauses) {
    out << "  [" << (c.pass ? "ok" : "fail") << "] " << c.clause;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    if (!c.witness.empty()) out << " witness: " << c.witness;
    out << "\n";
  }
  return out.str();
}

ExtensionSpec extension_spec(int k, bool toy) { return toy ? toy_extension_spec() : chi_extension_spec(k); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wkc: weak commutativity groups G(H,K;f)"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolkitVersion);

  std::string format = "text";
  std::string output;
  std::string cache_dir;
  int jobs = 1;
  std::size_t max_cosets = std::size_t{1} << 21;
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output,-o", output, "write the result to a file");
  app.add_option("--cache", cache_dir, "result cache directory (default: $WKC_CACHE_DIR)");
  app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-cosets", max_cosets, "coset table cap")->check(CLI::PositiveNumber);

  int status = kOk;
  auto options = [&] {
    EnumerationOptions o;
    o.max_cosets = max_cosets;
    return o;
  };

  // tables ------------------------------------------------------------------
  auto* tables = app.add_subcommand("tables", "reproduce the classification tables");
  std::string which = "a23";
  std::string table_mode = "graded-lex";
  tables->add_option("--which", which, "a23, a24 or a33")->check(CLI::IsMember({"a23", "a24", "a33"}));
  tables->add_option("--mode", table_mode, "element enumeration: graded-lex or plain-lex");
  tables->callback([&] {
    auto cache = open_cache(cache_dir);
    const TableReport rep = run_table(which, parse_mode(table_mode), jobs, cache ? &*cache : nullptr, options());
    if (format == "json") {
      emit(rep.to_json(), output);
    } else if (format == "csv") {
      emit(records_to_csv(rep.records), output);
    } else {
      emit(rep.to_text(), output);
    }
    if (!rep.pass()) status = kCheckFailed;
  });

  // classify ----------------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "classify G(A;f) over double-coset representatives");
  GroupArgs cg;
  bool lines = false;
  bool stretch = false;
  add_group_args(classify, cg, false);
  classify->add_flag("--lines", lines, "use PGL on lines and line-linear bijections");
  classify->add_flag("--stretch", stretch, "allow indices beyond the default cap");
  classify->callback([&] {
    const ElementOrder order = make_order(cg);
    const std::size_t cap = stretch ? std::size_t{100000000} : kDefaultIndexCap;
    std::vector<Task> tasks;
    for (const auto& f : class_representatives(order, lines ? ActionDomain::lines : ActionDomain::elements, cap)) {
      tasks.push_back(graph_task(order, f));
    }
    auto cache = open_cache(cache_dir);
    const BatchOutcome out = run_batch(tasks, jobs, cache ? &*cache : nullptr, options());
    if (format == "json") {
      ordered_json j;
      j["schema"] = kSchemaVersion;
      j["group"] = order.group().name();
      j["enumerations"] = out.enumerations;
      j["cache_hits"] = out.cache_hits;
      j["records"] = nlohmann::json::array();
      for (const auto& r : out.records) j["records"].push_back(ordered_json::parse(r.to_json(false)));
      emit(j.dump(), output);
    } else {
      emit(records_to_csv(out.records), output);
    }
    std::cerr << tasks.size() << " groups, " << out.enumerations << " enumerated, " << out.cache_hits
              << " from cache\n";
  });

  // analyze -----------------------------------------------------------------
  auto* analyze_cmd = app.add_subcommand("analyze", "enumerate and analyze one group");
  GroupArgs ag;
  std::string presentation_text;
  add_group_args(analyze_cmd, ag, true);
  analyze_cmd->add_option("--presentation", presentation_text, "explicit presentation \"< a,b | ... >\"");
  analyze_cmd->callback([&] {
    Task t;
    if (!presentation_text.empty()) {
      t = presentation_task("presentation", {}, parse_presentation(presentation_text));
    } else {
      const ElementOrder order = make_order(ag);
      t = graph_task(order, make_f(order, ag));
    }
    auto cache = open_cache(cache_dir);
    const BatchOutcome out = run_batch({t}, 1, cache ? &*cache : nullptr, options());
    const ResultRecord& r = out.records.front();
    if (format == "json") {
      emit(r.to_json(), output);
    } else {
      std::ostringstream s;
      s << "order " << r.order_text();
      if (r.closed) {
        s << ", class " << (r.nilpotency_class ? std::to_string(*r.nilpotency_class) : "none") << ", derived length "
          << r.derived_length << ", exponent " << r.exponent << (r.exponent_exact ? "" : " (bound)") << ", center "
          << r.center_order;
      }
      emit(s.str(), output);
    }
    if (!r.closed) status = kError;
  });

  // dcosets -----------------------------------------------------------------
  auto* dcosets = app.add_subcommand("dcosets", "double cosets U\\Sym(n)/U for U = Aut(A_{p,k})");
  dcosets->require_subcommand(1);
  GroupArgs dg;
  bool d_lines = false;
  bool d_stretch = false;
  std::string d_g;
  auto dc_group = [&] {
    const ElementOrder order = make_order(dg);
    return std::pair{order, automorphism_perm_group(order, d_lines ? ActionDomain::lines : ActionDomain::elements)};
  };
  auto* dcount = dcosets->add_subcommand("count", "count by Burnside");
  auto* dreps = dcosets->add_subcommand("reps", "enumerate representatives");
  auto* dsame = dcosets->add_subcommand("same", "decide whether f and g lie in one double coset");
  for (auto* c : {dcount, dreps, dsame}) {
    add_group_args(c, dg, c == dsame);
    c->add_flag("--lines", d_lines, "act on the lines instead of the non-identity elements");
  }
  dreps->add_flag("--stretch", d_stretch, "allow indices beyond the default cap");
  dsame->add_option("--g", d_g, "second permutation in cycle notation")->required();
  dcount->callback([&] {
    auto [order, u] = dc_group();
    const std::uint64_t n = count_burnside(u);
    if (format == "json") {
      emit(ordered_json{{"group", order.group().name()}, {"degree", u.degree()}, {"method", "burnside"}, {"count", n}}
               .dump(),
           output);
    } else {
      emit(std::to_string(n), output);
    }
  });
  // Element-mode permutations are written on enumeration positions (the
  // identity is position 1), line-mode ones on the lines 1..m.
  auto show = [&](const ElementOrder& order, const Permutation& p) {
    return d_lines ? p.to_cycles() : bijection_to_cycles(order, PointedBijection::from_permutation(order, p));
  };
  auto read_perm = [&](const ElementOrder& order, std::size_t degree, const std::string& text) {
    const std::string t = text.empty() ? "()" : text;
    return d_lines ? Permutation::from_cycles(t, degree) : bijection_from_cycles(order, t).as_permutation(order);
  };
  dreps->callback([&] {
    auto [order, u] = dc_group();
    const DoubleCosetReport r = enumerate_reps(u, d_stretch ? std::size_t{100000000} : kDefaultIndexCap);
    if (format == "json") {
      ordered_json j = ordered_json::parse(r.to_json(order.group().name()));
      j["representatives"] = nlohmann::json::array();
      for (const auto& p : r.representatives) j["representatives"].push_back(show(order, p));
      j["numbering"] = d_lines ? "lines" : "positions";
      emit(j.dump(), output);
    } else {
      std::string s;
      for (const auto& p : r.representatives) s += show(order, p) + "\n";
      emit(s, output);
    }
  });
  dsame->callback([&] {
    auto [order, u] = dc_group();
    const Permutation f = read_perm(order, u.degree(), dg.f);
    const Permutation g = read_perm(order, u.degree(), d_g);
    const auto w = same_double_coset(u, f, g);
    if (format == "json") {
      ordered_json j{{"same", w.has_value()}};
      if (w) j["witness"] = {{"a", show(order, w->a)}, {"b", show(order, w->b)}};
      emit(j.dump(), output);
    } else {
      emit(w ? "same: g = a f b with a = " + show(order, w->a) + ", b = " + show(order, w->b) : "different", output);
    }
  });

  // combinat ----------------------------------------------------------------
  auto* combinat = app.add_subcommand("combinat", "f-independence, incidence matrices and extraction");
  combinat->require_subcommand(1);
  GroupArgs kg;
  bool exact = false;
  auto* cbasis = combinat->add_subcommand("basis", "greedy f-independent basis and normalization");
  auto* cbound = combinat->add_subcommand("bound", "count f-independent bases against the lower bound");
  auto* cextract = combinat->add_subcommand("extract", "extract p-1 power-compatible bijections");
  auto* csingular = combinat->add_subcommand("singular", "incidence matrix and total singularity");
  for (auto* c : {cbasis, cbound, cextract, csingular}) add_group_args(c, kg, true);
  cbound->add_flag("--exact", exact, "enumerate every ordered basis");
  cbasis->callback([&] {
    const ElementOrder order = make_order(kg);
    const PointedBijection f = make_f(order, kg);
    const NormalizedBijection n = normalize_fix_basis(order, f);
    ordered_json j;
    j["basis"] = nlohmann::json::array();
    for (const auto& x : n.basis) j["basis"].push_back(format_element(x));
    j["image"] = nlohmann::json::array();
    for (const auto& x : n.basis) j["image"].push_back(format_element(f(x)));
    j["g"] = bijection_to_cycles(order, n.g);
    emit(format == "json" ? j.dump() : j.dump(2), output);
  });
  cbound->callback([&] {
    const ElementOrder order = make_order(kg);
    const IndependenceBound b = check_independence_bound(make_f(order, kg), exact);
    emit(b.to_json(), output);
    if (!b.pass) status = kCheckFailed;
  });
  cextract->callback([&] {
    const ElementOrder order = make_order(kg);
    const PointedBijection f = make_f(order, kg);
    const IntMatrix m = incidence_matrix(order, f);
    ordered_json j;
    j["doubly_stochastic"] = is_doubly_stochastic(m, kg.p - 1);
    j["extracted"] = nlohmann::json::array();
    bool ok = true;
    for (const auto& g : extract_power_compatible(order, f)) {
      const bool compatible = is_power_compatible(g, kg.p);
      const bool within = graph_within_relation(order, f, g);
      ok = ok && compatible && within;
      j["extracted"].push_back(
          {{"g", bijection_to_cycles(order, g)}, {"power_compatible", compatible}, {"within_relation", within}});
    }
    emit(format == "json" ? j.dump() : j.dump(2), output);
    if (!ok) status = kCheckFailed;
  });
  csingular->callback([&] {
    const ElementOrder order = make_order(kg);
    const IntMatrix m = incidence_matrix(order, make_f(order, kg));
    ordered_json j;
    j["matrix"] = m;
    const auto w = totally_singular_decompose(m);
    j["totally_singular"] = w.has_value();
    if (w) {
      j["zero_block"] = {w->zero_rows, w->zero_cols};
      j["row_order"] = w->row_order;
      j["col_order"] = w->col_order;
    }
    emit(format == "json" ? j.dump() : j.dump(2), output);
  });

  // fieldinv ----------------------------------------------------------------
  auto* fieldinv = app.add_subcommand("fieldinv", "G(F; x -> 1/x) for the additive group of GF(q)");
  int q = 8;
  fieldinv->add_option("--q", q, "field order")->required();
  fieldinv->callback([&] {
    const FiniteField field = FiniteField::of_order(q);
    const Task t = presentation_task("fieldinv", {{"q", std::to_string(q)}}, field_inverse_presentation(field));
    auto cache = open_cache(cache_dir);
    const ResultRecord r = run_batch({t}, 1, cache ? &*cache : nullptr, options()).records.front();
    const auto want = field_inverse_expectation(q);
    bool match = true;
    if (want) {
      match = r.order_text() == want->order && r.nilpotency_class == want->nilpotency_class;
    }
    if (format == "json") {
      ordered_json j = ordered_json::parse(r.to_json());
      if (want) {
        j["expected"] = {{"order", want->order}, {"class", *want->nilpotency_class}};
        j["matches_expected"] = match;
      }
      emit(j.dump(), output);
    } else {
      std::string s = (r.abelian() ? "abelian" : "non-abelian") + std::string(", order ") + r.order_text();
      if (!r.abelian() && r.nilpotency_class) s += ", class " + std::to_string(*r.nilpotency_class);
      if (want && !match) {
        s += "\nexpected " + std::string(want->nilpotency_class == 1 ? "abelian" : "class " + std::to_string(*want->nilpotency_class)) +
             ", order " + want->order;
      }
      emit(s, output);
    }
    if (!match) status = kCheckFailed;
  });

  // extension ---------------------------------------------------------------
  auto* extension = app.add_subcommand("extension", "the extension construction f* and its group");
  int ext_k = 3;
  bool toy = false;
  extension->add_option("--k", ext_k, "rank of A_{2,k}")->check(CLI::Range(2, 5));
  extension->add_flag("--toy", toy, "use the C_4 / C_2 instance");
  extension->callback([&] {
    const ExtensionInstance e = make_extension_instance(extension_spec(ext_k, toy), options());
    const GroupAnalysis a = analyze(e.image.group);
    ordered_json j;
    j["instance"] = toy ? "toy" : "chi-extension k=" + std::to_string(ext_k);
    j["f_star"] = bijection_to_images(ElementOrder(e.extension.spec.h_tilde, EnumerationMode::graded_lex),
                                      e.extension.f_star);
    j["analysis"] = ordered_json::parse(a.to_json());
    emit(format == "json" ? j.dump() : j.dump(2), output);
  });

  // verify-matrix -----------------------------------------------------------
  auto* verify = app.add_subcommand("verify-matrix", "check the GL(5, Z[x,y,w]) representation");
  verify->callback([&] {
    const RepresentationReport r = verify_representation();
    if (format == "json") {
      emit(r.to_json(), output);
    } else {
      std::ostringstream s;
      for (const auto& c : r.checks) {
        s << "[" << (c.pass ? "ok" : "fail") << "] " << c.name;
        if (!c.detail.empty()) s << " (" << c.detail << ")";
        s << "\n";
      }
      emit(s.str(), output);
    }
    if (!r.pass()) status = kCheckFailed;
  });

  // sanov -------------------------------------------------------------------
  auto* sanov = app.add_subcommand("sanov", "random instances of <H,K | h h^f = h^a h^b>");
  GroupArgs sg;
  sg.k = 2;
  int count = 20;
  std::uint64_t seed = 0;
  add_group_args(sanov, sg, false);
  sanov->add_option("--count", count, "number of instances")->check(CLI::PositiveNumber);
  sanov->add_option("--seed", seed, "first seed; instance i uses seed + i");
  sanov->callback([&] {
    const AbelianGroup h = AbelianGroup::elementary(sg.p, sg.k);
    const double n = static_cast<double>(h.order());
    std::vector<Task> tasks;
    for (int i = 0; i < count; ++i) {
      const SanovInstance s = random_sanov_instance(h, seed + i);
      tasks.push_back(presentation_task("sanov", {{"group", h.name()}, {"seed", std::to_string(seed + i)}},
                                        build_sanov(h, h, s.f, s.a, s.b)));
    }
    auto cache = open_cache(cache_dir);
    const BatchOutcome out = run_batch(tasks, jobs, cache ? &*cache : nullptr, options());
    ordered_json j;
    j["group"] = h.name();
    j["bound_n_e_pow_n_minus_1"] = n * std::exp(n - 1);
    j["instances"] = nlohmann::json::array();
    bool all_closed = true;
    for (const auto& r : out.records) {
      all_closed = all_closed && r.closed;
      j["instances"].push_back({{"seed", r.params.at("seed")}, {"closed", r.closed}, {"order", r.order_text()}});
    }
    j["all_finite"] = all_closed;
    emit(format == "json" ? j.dump() : j.dump(2), output);
    if (!all_closed) status = kCheckFailed;
  });

  // check -------------------------------------------------------------------
  auto* check = app.add_subcommand("check", "executable theorem checkers");
  check->require_subcommand(1);
  int chk_k = 3;
  bool chk_toy = false;
  GroupArgs mg;
  auto* ext_thm = check->add_subcommand("ext-theorem", "the commutator identities of the extension");
  auto* rank_thm = check->add_subcommand("rank-theorem", "rank bounds for the extension");
  auto* metab = check->add_subcommand("metab", "class of G/G'' bounded by |A|");
  for (auto* c : {ext_thm, rank_thm}) {
    c->add_option("--k", chk_k, "rank of A_{2,k}")->check(CLI::Range(2, 5));
    c->add_flag("--toy", chk_toy, "use the C_4 / C_2 instance");
  }
  add_group_args(metab, mg, true);
  auto emit_report = [&](const Report& r) {
    emit(format == "json" ? r.to_json() : report_text(r), output);
    if (!r.pass()) status = kCheckFailed;
  };
  ext_thm->callback([&] {
    emit_report(check_extension_theorem(make_extension_instance(extension_spec(chk_k, chk_toy), options())));
  });
  rank_thm->callback([&] {
    emit_report(check_rank_theorem(make_extension_instance(extension_spec(chk_k, chk_toy), options())));
  });
  metab->callback([&] {
    const ElementOrder order = make_order(mg);
    const PointedBijection f = make_f(order, mg);
    const GroupImage img = regular_image(build_pairs_presentation(graph_pairs(f)), options());
    emit_report(check_metabelian_quotient(img, order.group().order()));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return status;
}
