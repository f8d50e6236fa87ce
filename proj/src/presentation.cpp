#include "wkc/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace wkc {

GroupWord::GroupWord(std::vector<Letter> letters) {
  for (const Letter& l : letters) {
    if (l.exp == 0) continue;
    if (!letters_.empty() && letters_.back().gen == l.gen) {
      letters_.back().exp += l.exp;
      if (letters_.back().exp == 0) letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

GroupWord GroupWord::generator(std::uint32_t gen, int exp) { return GroupWord({Letter{gen, exp}}); }

std::size_t GroupWord::length() const {
  std::size_t n = 0;
  for (const Letter& l : letters_) n += static_cast<std::size_t>(std::abs(l.exp));
  return n;
}

GroupWord GroupWord::inverse() const {
  std::vector<Letter> r(letters_.rbegin(), letters_.rend());
  for (Letter& l : r) l.exp = -l.exp;
  return GroupWord(std::move(r));
}

GroupWord GroupWord::operator*(const GroupWord& other) const {
  std::vector<Letter> r = letters_;
  r.insert(r.end(), other.letters_.begin(), other.letters_.end());
  return GroupWord(std::move(r));
}

GroupWord GroupWord::power(int n) const {
  GroupWord base = n < 0 ? inverse() : *this;
  GroupWord r;
  for (int i = 0; i < std::abs(n); ++i) r = r * base;
  return r;
}

GroupWord commutator(const GroupWord& x, const GroupWord& y) {
  return x.inverse() * y.inverse() * x * y;
}

GroupWord commutator(const std::vector<GroupWord>& parts) {
  if (parts.empty()) return {};
  GroupWord r = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) r = commutator(r, parts[i]);
  return r;
}

GroupWord Relator::word() const {
  if (parts.size() == 1) return parts.front();
  return commutator(parts);
}

std::vector<GroupWord> Presentation::relator_words() const {
  std::vector<GroupWord> r;
  r.reserve(relators.size());
  for (const auto& rel : relators) r.push_back(rel.word());
  return r;
}

// ---------------------------------------------------------------------------

std::string format_word(const Presentation& p, const GroupWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter& l : w.letters()) {
    if (!s.empty()) s += '*';
    s += p.generators.at(l.gen);
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s;
}

std::string format_relator(const Presentation& p, const Relator& r) {
  if (!r.is_commutator()) return format_word(p, r.parts.front());
  std::string s = "[";
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    if (i) s += ',';
    s += format_word(p, r.parts[i]);
  }
  return s + "]";
}

std::string format_presentation(const Presentation& p) {
  std::string s = "< ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) s += ',';
    s += p.generators[i];
  }
  s += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    s += i ? ", " : " ";
    s += format_relator(p, p.relators[i]);
  }
  return s + " >";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas that are not nested inside brackets.
std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (depth < 0) throw Error("unbalanced ']' in presentation");
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error("unbalanced '[' in presentation");
  out.push_back(trim(s.substr(start)));
  return out;
}

Relator parse_relator(const Presentation& p, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw Error("malformed commutator \"" + std::string(text) + "\"");
    Relator r;
    for (auto part : split_top(text.substr(1, text.size() - 2))) r.parts.push_back(parse_word(p, part));
    if (r.parts.size() < 2) throw Error("commutator needs at least two entries");
    return r;
  }
  return Relator{{parse_word(p, text)}};
}

}  // namespace

GroupWord parse_word(const Presentation& p, std::string_view text) {
  text = trim(text);
  if (text == "1") return {};
  if (text.empty()) throw Error("empty word");
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('*', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = trim(text.substr(pos, end - pos));
    std::string_view name = item;
    int exp = 1;
    if (auto caret = item.find('^'); caret != std::string_view::npos) {
      name = trim(item.substr(0, caret));
      std::string_view e = trim(item.substr(caret + 1));
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc() || ptr != e.data() + e.size()) {
        throw Error("bad exponent in \"" + std::string(item) + "\"");
      }
    }
    auto it = std::find(p.generators.begin(), p.generators.end(), name);
    if (it == p.generators.end()) throw Error("unknown generator \"" + std::string(name) + "\"");
    letters.push_back({static_cast<std::uint32_t>(it - p.generators.begin()), exp});
    pos = end + 1;
  }
  return GroupWord(std::move(letters));
}

Presentation parse_presentation(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '<' || text.back() != '>') {
    throw Error("presentation must be enclosed in < >");
  }
  text = text.substr(1, text.size() - 2);
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw Error("presentation needs '|'");
  Presentation p;
  for (auto g : split_top(text.substr(0, bar))) {
    if (g.empty()) throw Error("empty generator name");
    for (char c : g) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        throw Error("bad generator name \"" + std::string(g) + "\"");
      }
    }
    p.generators.emplace_back(g);
  }
  std::string_view rels = trim(text.substr(bar + 1));
  if (!rels.empty()) {
    for (auto r : split_top(rels)) p.relators.push_back(parse_relator(p, r));
  }
  return p;
}

// ---------------------------------------------------------------------------

PairSet graph_pairs(const PointedBijection& f) {
  PairSet s{f.domain(), f.codomain(), {}};
  for (std::uint64_t c = 1; c < f.domain().order(); ++c) {
    s.pairs.emplace_back(f.domain().element(c), f.codomain().element(f.image_code(c)));
  }
  return s;
}

PairSet chi_pairs(const AbelianGroup& a, const std::vector<AbelianElement>& s, int m) {
  if (m < 1) throw Error("chi: m must be >= 1");
  for (const auto& x : s) {
    if (!a.contains(x)) throw Error("chi: S is not inside " + a.name());
  }
  PairSet out{a, a, {}};
  std::set<AbelianElement> seen;
  std::vector<AbelianElement> level{a.identity()};
  for (int i = 1; i <= m; ++i) {
    std::vector<AbelianElement> next;
    for (const auto& w : level) {
      for (const auto& x : s) next.push_back(combine(a, w, x));
    }
    for (const auto& w : next) {
      if (!a.is_identity(w) && seen.insert(w).second) out.pairs.emplace_back(w, w);
    }
    level = std::move(next);
  }
  return out;
}

PairSet chi_full_pairs(const AbelianGroup& a) { return graph_pairs(identity_bijection(a)); }

PairSet example1_pairs(int p) {
  AbelianGroup a = AbelianGroup::elementary(p, 3);
  auto g = [&](std::initializer_list<int> d) { return AbelianElement{std::vector<int>(d)}; };
  PairSet s{a, a, {}};
  for (std::size_t i = 0; i < 3; ++i) s.pairs.emplace_back(a.generator(i), a.generator(i));
  s.pairs.emplace_back(g({1, 1, 0}), g({1, p - 1, 0}));
  s.pairs.emplace_back(g({1, 0, 1}), g({1, 0, 1}));
  s.pairs.emplace_back(g({0, 1, 1}), g({0, 1, 1}));
  return s;
}

GroupWord element_word(const AbelianElement& x, std::uint32_t offset) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < x.digits.size(); ++i) {
    if (x.digits[i] != 0) letters.push_back({offset + static_cast<std::uint32_t>(i), x.digits[i]});
  }
  return GroupWord(std::move(letters));
}

namespace {

void add_abelian_block(Presentation& p, const AbelianGroup& a, std::uint32_t offset) {
  for (std::size_t i = 0; i < a.rank(); ++i) {
    p.relators.push_back({{GroupWord::generator(offset + static_cast<std::uint32_t>(i), a.cyclic_orders()[i])}});
  }
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      p.relators.push_back({{GroupWord::generator(offset + static_cast<std::uint32_t>(i)),
                             GroupWord::generator(offset + static_cast<std::uint32_t>(j))}});
    }
  }
}

Presentation two_group_frame(const AbelianGroup& a, const AbelianGroup& b) {
  if (a.rank() == 0 || b.rank() == 0) throw Error("presentation needs non-empty generator lists");
  Presentation p;
  for (std::size_t i = 0; i < a.rank(); ++i) p.generators.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < b.rank(); ++i) p.generators.push_back("b" + std::to_string(i + 1));
  add_abelian_block(p, a, 0);
  add_abelian_block(p, b, static_cast<std::uint32_t>(a.rank()));
  p.params["A"] = a.name();
  p.params["B"] = b.name();
  return p;
}

}  // namespace

Presentation build_pairs_presentation(const PairSet& pairs) {
  Presentation p = two_group_frame(pairs.a, pairs.b);
  p.tag = "pairs";
  const auto offset = static_cast<std::uint32_t>(pairs.a.rank());
  for (const auto& [u, v] : pairs.pairs) {
    if (!pairs.a.contains(u) || !pairs.b.contains(v)) throw Error("pair does not live in A x B");
    p.relators.push_back({{element_word(u, 0), element_word(v, offset)}});
  }
  return p;
}

Presentation build_sanov(const AbelianGroup& h, const AbelianGroup& k, const PointedBijection& f,
                         const CodeTable& a, const CodeTable& b) {
  if (!(f.domain() == h) || !(f.codomain() == k)) throw Error("sanov: f has the wrong groups");
  if (a.size() != h.order() || b.size() != h.order()) throw Error("sanov: table domain mismatch");
  if (a[0] != 0 || b[0] != 0) throw Error("sanov: tables must fix the identity");
  Presentation p = two_group_frame(h, k);
  p.tag = "sanov";
  const auto offset = static_cast<std::uint32_t>(h.rank());
  for (std::uint64_t c = 1; c < h.order(); ++c) {
    if (a[c] >= k.order() || b[c] >= h.order()) throw Error("sanov: table entry out of range");
    GroupWord w = element_word(h.element(c), 0) * element_word(k.element(f.image_code(c)), offset) *
                  element_word(h.element(b[c]), 0).inverse() *
                  element_word(k.element(a[c]), offset).inverse();
    if (!w.empty()) p.relators.push_back({{w}});
  }
  return p;
}

// ---------------------------------------------------------------------------

std::vector<AbelianElement> span(const AbelianGroup& a, const std::vector<AbelianElement>& gens) {
  std::vector<AbelianElement> out{a.identity()};
  std::set<AbelianElement> seen{a.identity()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      AbelianElement y = combine(a, out[i], g);
      if (seen.insert(y).second) out.push_back(y);
    }
  }
  return out;
}

PointedBijection extension_map(const ExtensionSpec& spec) {
  const AbelianGroup& ht = spec.h_tilde;
  const AbelianGroup& kt = spec.k_tilde;
  auto m = span(ht, spec.m_gens);
  if (m.size() * spec.h_transversal.size() != ht.order()) {
    throw Error("extension: |M| * |H| != |H~|");
  }
  if (spec.alpha.size() != m.size() || spec.gamma.size() != m.size()) {
    throw Error("extension: alpha and gamma must be defined on all of M");
  }
  if (spec.alpha.at(0) != 0) throw Error("extension: alpha moves the identity");
  std::set<std::uint64_t> gamma_image;
  for (auto [x, y] : spec.gamma) gamma_image.insert(y);
  if (gamma_image.size() != m.size()) throw Error("extension: gamma is not bijective");
  if (spec.f.at(0) != 0) throw Error("extension: f moves the identity");
  std::vector<std::uint64_t> table(ht.order(), UINT64_MAX);
  for (const auto& mm : m) {
    const std::uint64_t mc = ht.code(mm);
    for (const auto& h : spec.h_transversal) {
      const std::uint64_t x = ht.code(combine(ht, mm, h));
      if (table[x] != UINT64_MAX) throw Error("extension: transversal is not a transversal of M");
      if (ht.is_identity(h)) {
        table[x] = spec.alpha.at(mc);
      } else {
        table[x] = kt.code(combine(kt, kt.element(spec.gamma.at(mc)), kt.element(spec.f.at(ht.code(h)))));
      }
    }
  }
  return PointedBijection(ht, kt, std::move(table));
}

Extension build_extension(ExtensionSpec spec) {
  PointedBijection f_star = extension_map(spec);
  Presentation p = build_pairs_presentation(graph_pairs(f_star));
  p.tag = "extension";
  return Extension{std::move(spec), std::move(f_star), std::move(p)};
}

ExtensionSpec chi_extension_spec(int k) {
  if (k < 2) throw Error("extension needs k >= 2");
  AbelianGroup a = AbelianGroup::elementary(2, k);
  ExtensionSpec s{a, a, {a.generator(0)}, {a.generator(0)}, {}, {}, {}, {}, {}};
  std::vector<AbelianElement> rest;
  for (int i = 1; i < k; ++i) rest.push_back(a.generator(static_cast<std::size_t>(i)));
  s.h_transversal = span(a, rest);
  s.k_transversal = s.h_transversal;
  const std::uint64_t e = 0;
  const std::uint64_t a1 = a.code(a.generator(0));
  s.alpha = {{e, e}, {a1, a1}};
  s.gamma = {{e, a1}, {a1, e}};
  for (const auto& h : s.h_transversal) s.f[a.code(h)] = a.code(h);
  return s;
}

ExtensionSpec toy_extension_spec() {
  AbelianGroup c4({4});
  ExtensionSpec s{c4, c4, {{{2}}}, {{{2}}}, {{{0}}, {{1}}}, {{{0}}, {{1}}}, {}, {}, {}};
  s.alpha = {{0, 0}, {2, 2}};
  s.gamma = {{0, 2}, {2, 0}};
  s.f = {{0, 0}, {1, 1}};
  return s;
}

}  // namespace wkc
