#include "wkc/enumerator.hpp"

#include <algorithm>
#include <set>

namespace wkc {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::felsch: return "felsch";
    case Strategy::hlt: return "hlt";
    default: return "automatic";
  }
}

Strategy parse_strategy(std::string_view text) {
  if (text == "felsch") return Strategy::felsch;
  if (text == "hlt") return Strategy::hlt;
  if (text == "automatic" || text == "auto") return Strategy::automatic;
  throw Error("unknown strategy \"" + std::string(text) + "\"");
}

std::uint32_t CosetTable::trace(std::uint32_t coset, const GroupWord& w) const {
  for (const Letter& l : w.letters()) {
    const std::uint32_t col = column(l.gen, l.exp < 0);
    for (int i = 0; i < std::abs(l.exp); ++i) {
      coset = at(coset, col);
      if (coset == kUndefined) return kUndefined;
    }
  }
  return coset;
}

std::string CosetTable::to_csv() const {
  std::string out = "coset,column,target\n";
  for (std::size_t c = 0; c < size_; ++c) {
    for (std::size_t x = 0; x < columns_; ++x) {
      std::uint32_t t = at(static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(x));
      out += std::to_string(c + 1) + "," + std::to_string(x) + "," +
             (t == kUndefined ? std::string("-") : std::to_string(t + 1)) + "\n";
    }
  }
  return out;
}

// Coset enumeration state following the standard coincidence procedure with
// a union-find forwarding array. Dead rows are recycled by compaction.
class Enumerator {
 public:
  using Word = std::vector<std::uint32_t>;
  static constexpr std::uint32_t U = CosetTable::kUndefined;

  Enumerator(const Presentation& p, const std::vector<GroupWord>& subgroup, const EnumerationOptions& opt)
      : cap_(opt.max_cosets) {
    if (cap_ < 1) throw Error("max_cosets must be >= 1");
    if (cap_ >= U) throw CapacityError("max_cosets too large");
    const std::size_t ngens = p.generator_count();
    std::vector<bool> involution(ngens, false);
    for (const auto& r : p.relators) {
      GroupWord w = r.word();
      if (w.letters().size() == 1 && std::abs(w.letters()[0].exp) == 2) involution[w.letters()[0].gen] = true;
    }
    t_.gen_col_.resize(ngens);
    t_.inv_col_.resize(ngens);
    std::uint32_t c = 0;
    for (std::size_t g = 0; g < ngens; ++g) {
      t_.gen_col_[g] = c++;
      t_.inv_col_[g] = involution[g] ? t_.gen_col_[g] : c++;
    }
    cols_ = c;
    t_.columns_ = cols_;
    inv_.resize(cols_);
    for (std::size_t g = 0; g < ngens; ++g) {
      inv_[t_.gen_col_[g]] = t_.inv_col_[g];
      inv_[t_.inv_col_[g]] = t_.gen_col_[g];
    }
    std::set<Word> seen;
    for (const auto& w : p.relator_words()) {
      Word cw = cyclic_reduce(to_columns(w));
      if (cw.empty() || !seen.insert(cw).second) continue;
      relators_.push_back(cw);
    }
    for (const auto& w : subgroup) subgroup_.push_back(free_reduce(to_columns(w)));
    // Cyclic conjugates of each relator and its inverse, bucketed by first letter.
    conjugates_.resize(cols_);
    std::set<Word> conj_seen;
    for (const auto& r : relators_) {
      for (const Word& base : {r, inverse_word(r)}) {
        for (std::size_t s = 0; s < base.size(); ++s) {
          Word rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
          if (conj_seen.insert(rot).second) conjugates_[rot.front()].push_back(rot);
        }
      }
    }
    strategy_ = opt.strategy;
    if (strategy_ == Strategy::automatic) strategy_ = ngens <= 64 ? Strategy::felsch : Strategy::hlt;
  }

  CosetTable run() {
    initial_rows_ = std::min<std::size_t>(cap_, 1024);
    table_.assign(initial_rows_ * cols_, U);
    parent_.assign(initial_rows_, 0);
    rows_used_ = 1;
    live_ = 1;
    bool ok = strategy_ == Strategy::felsch ? felsch() : hlt();
    t_.strategy_ = strategy_;
    t_.peak_ = peak_;
    t_.defined_total_ = defined_total_;
    if (!ok) {
      t_.status_ = EnumStatus::overflowed;
      t_.size_ = live_;
      return std::move(t_);
    }
    standardize();
    t_.status_ = EnumStatus::closed;
    return std::move(t_);
  }

 private:
  Word to_columns(const GroupWord& w) const {
    Word out;
    for (const Letter& l : w.letters()) {
      const std::uint32_t col = l.exp > 0 ? t_.gen_col_[l.gen] : t_.inv_col_[l.gen];
      int n = std::abs(l.exp);
      if (t_.gen_col_[l.gen] == t_.inv_col_[l.gen]) n %= 2;
      for (int i = 0; i < n; ++i) out.push_back(col);
    }
    return free_reduce(out);
  }

  Word free_reduce(const Word& w) const {
    Word out;
    for (std::uint32_t x : w) {
      if (!out.empty() && out.back() == inv_[x]) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  Word cyclic_reduce(Word w) const {
    w = free_reduce(w);
    std::size_t i = 0;
    std::size_t j = w.size();
    while (j - i >= 2 && w[i] == inv_[w[j - 1]]) {
      ++i;
      --j;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
  }

  Word inverse_word(const Word& w) const {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) x = inv_[x];
    return out;
  }

  std::uint32_t& cell(std::uint32_t c, std::uint32_t x) { return table_[static_cast<std::size_t>(c) * cols_ + x]; }

  bool live(std::uint32_t c) const { return parent_[c] == c; }

  void set(std::uint32_t a, std::uint32_t x, std::uint32_t b) {
    cell(a, x) = b;
    cell(b, inv_[x]) = a;
  }

  // Appends a fresh row; false when the cap is reached. Compaction is only
  // allowed when the caller holds no row numbers other than the one it
  // passes through remap().
  bool new_coset(std::uint32_t& out, bool may_compact) {
    if (rows_used_ == table_rows()) {
      if (may_compact && live_ < rows_used_) {
        compact();
      }
      if (rows_used_ == table_rows()) {
        if (table_rows() >= cap_) return false;
        grow();
      }
    }
    const auto c = static_cast<std::uint32_t>(rows_used_++);
    std::fill_n(table_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * cols_), cols_, U);
    parent_[c] = c;
    ++live_;
    ++defined_total_;
    peak_ = std::max(peak_, live_);
    out = c;
    return true;
  }

  std::size_t table_rows() const { return parent_.size(); }

  void grow() {
    std::size_t rows = std::min(cap_, table_rows() * 2);
    table_.resize(rows * cols_, U);
    parent_.resize(rows, 0);
  }

  std::uint32_t find(std::uint32_t c) {
    std::uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::uint32_t n = parent_[c];
      parent_[c] = r;
      c = n;
    }
    return r;
  }

  void merge(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    queue_.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const std::uint32_t g = queue_[qi];
      --live_;
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const std::uint32_t d = cell(g, x);
        if (d == U) continue;
        if (cell(d, inv_[x]) == g) cell(d, inv_[x]) = U;
        const std::uint32_t mu = find(g);
        const std::uint32_t nu = find(d);
        if (cell(mu, x) != U) {
          merge(nu, cell(mu, x));
        } else if (cell(nu, inv_[x]) != U) {
          merge(mu, cell(nu, inv_[x]));
        } else {
          set(mu, x, nu);
          deductions_.push_back({mu, x});
        }
      }
    }
    queue_.clear();
  }

  // Scan of w at coset a without defining cosets; makes the forced deduction
  // when exactly one gap remains.
  void scan(std::uint32_t a, const Word& w) {
    std::uint32_t f = a;
    std::size_t i = 0;
    const std::size_t n = w.size();
    while (i < n) {
      std::uint32_t t = cell(f, w[i]);
      if (t == U) break;
      f = t;
      ++i;
    }
    if (i == n) {
      if (f != a) coincidence(f, a);
      return;
    }
    std::uint32_t b = a;
    std::size_t j = n;
    while (j > i) {
      std::uint32_t t = cell(b, inv_[w[j - 1]]);
      if (t == U) break;
      b = t;
      --j;
    }
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      set(f, w[i], b);
      deductions_.push_back({f, w[i]});
    }
  }

  // Scan of w at a, defining new cosets to close gaps. False on overflow.
  bool scan_and_fill(std::uint32_t a, const Word& w) {
    const std::size_t n = w.size();
    std::uint32_t f = a;
    std::uint32_t b = a;
    std::size_t i = 0;
    std::size_t j = n;
    for (;;) {
      while (i < j && cell(f, w[i]) != U) f = cell(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i && cell(b, inv_[w[j - 1]]) != U) b = cell(b, inv_[w[--j]]);
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        set(f, w[i], b);
        deductions_.push_back({f, w[i]});
        return true;
      }
      std::uint32_t c;
      if (!new_coset(c, false)) return false;
      set(f, w[i], c);
      deductions_.push_back({f, w[i]});
      // The coincidence routine may have killed f or b meanwhile; callers
      // rescan from the start when that happens.
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [a, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(a)) continue;
      for (const Word& w : conjugates_[x]) {
        scan(a, w);
        if (!live(a)) break;
      }
      if (!live(a)) continue;
      const std::uint32_t b = cell(a, x);
      if (b == U || !live(b)) continue;
      for (const Word& w : conjugates_[inv_[x]]) {
        scan(b, w);
        if (!live(b)) break;
      }
    }
  }

  bool fill_subgroup() {
    for (const Word& w : subgroup_) {
      if (!scan_and_fill(0, w)) return false;
      process_deductions();
    }
    return true;
  }

  bool felsch() {
    if (!fill_subgroup()) return false;
    for (std::uint32_t a = 0; a < rows_used_; ++a) {
      for (std::uint32_t x = 0; x < cols_ && live(a); ++x) {
        if (cell(a, x) != U) continue;
        std::uint32_t c;
        if (!new_coset(c, true)) return false;
        a = remap(a);
        set(a, x, c);
        deductions_.push_back({a, x});
        process_deductions();
      }
    }
    return true;
  }

  bool hlt() {
    if (!fill_subgroup()) return false;
    deductions_.clear();
    std::uint32_t a = 0;
    while (a < rows_used_) {
      if (!live(a)) {
        ++a;
        continue;
      }
      bool restart = false;
      for (std::size_t r = 0; r < relators_.size() && !restart; ++r) {
        bool ok = scan_and_fill(a, relators_[r]);
        deductions_.clear();
        if (!ok) {
          if (!lookahead()) return false;
          a = remap(a);
          restart = true;
        } else if (!live(a)) {
          break;
        }
      }
      if (restart) continue;
      for (std::uint32_t x = 0; x < cols_ && live(a) && !restart; ++x) {
        if (cell(a, x) != U) continue;
        std::uint32_t c;
        if (!new_coset(c, false)) {
          if (!lookahead()) return false;
          a = remap(a);
          restart = true;
          break;
        }
        set(a, x, c);
      }
      if (!restart) ++a;
    }
    // Every relator must hold at every coset before the table counts as
    // closed.
    for (std::uint32_t c = 0; c < rows_used_; ++c) {
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r);
      }
      deductions_.clear();
    }
    compact();
    for (std::uint32_t c = 0; c < rows_used_; ++c) {
      for (std::uint32_t x = 0; x < cols_; ++x) {
        if (cell(c, x) == U) return false;
      }
    }
    return true;
  }

  // Scans every live coset against every relator without defining any new
  // coset, then compacts. True when some room was freed.
  bool lookahead() {
    const std::size_t before = rows_used_;
    for (std::uint32_t c = 0; c < rows_used_; ++c) {
      for (const auto& r : relators_) {
        if (!live(c)) break;
        scan(c, r);
      }
      deductions_.clear();
    }
    compact();
    return rows_used_ < before;
  }

  std::uint32_t remap(std::uint32_t a) {
    if (remap_.empty()) return a;
    std::uint32_t r = remap_[a];
    remap_.clear();
    return r == U ? static_cast<std::uint32_t>(rows_used_) : r;
  }

  // Renumbers live rows 0..live-1 preserving order.
  void compact() {
    std::vector<std::uint32_t> to(rows_used_, U);
    std::uint32_t n = 0;
    for (std::uint32_t c = 0; c < rows_used_; ++c) {
      if (live(c)) to[c] = n++;
    }
    // Dead rows map to their live representative's new number where known,
    // otherwise to the next live row in order.
    std::vector<std::uint32_t> dead_to(rows_used_, U);
    std::uint32_t following = U;
    for (std::uint32_t c = static_cast<std::uint32_t>(rows_used_); c-- > 0;) {
      if (live(c)) {
        following = to[c];
      } else {
        dead_to[c] = following;
      }
    }
    for (std::uint32_t c = 0; c < rows_used_; ++c) {
      if (!live(c)) continue;
      const std::uint32_t d = to[c];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        std::uint32_t t = cell(c, x);
        cell(d, x) = t == U ? U : to[find(t)];
      }
    }
    remap_.assign(rows_used_, U);
    for (std::uint32_t c = 0; c < rows_used_; ++c) remap_[c] = live(c) ? to[c] : dead_to[c];
    // Rebuild bookkeeping.
    for (std::size_t c = 0; c < table_rows(); ++c) parent_[c] = static_cast<std::uint32_t>(c);
    rows_used_ = n;
    live_ = n;
    for (auto& [a, x] : deductions_) a = remap_[a];
    std::erase_if(deductions_, [](const auto& d) { return d.first == U; });
  }

  // Breadth-first renumbering from coset 0 into the output table.
  void standardize() {
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> to(rows_used_, U);
    order.reserve(live_);
    to[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::uint32_t c = order[i];
      for (std::uint32_t x = 0; x < cols_; ++x) {
        const std::uint32_t t = cell(c, x);
        if (to[t] == U) {
          to[t] = static_cast<std::uint32_t>(order.size());
          order.push_back(t);
        }
      }
    }
    t_.size_ = order.size();
    t_.rows_.assign(order.size() * cols_, U);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::uint32_t x = 0; x < cols_; ++x) t_.rows_[i * cols_ + x] = to[cell(order[i], x)];
    }
    table_.clear();
    table_.shrink_to_fit();
  }

  CosetTable t_;
  std::size_t cap_;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> inv_;
  std::vector<Word> relators_;
  std::vector<Word> subgroup_;
  std::vector<std::vector<Word>> conjugates_;
  Strategy strategy_ = Strategy::felsch;

  std::size_t initial_rows_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> remap_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> deductions_;
  std::size_t rows_used_ = 0;
  std::size_t live_ = 0;
  std::size_t peak_ = 1;
  std::size_t defined_total_ = 1;
};

CosetTable todd_coxeter(const Presentation& p, const std::vector<GroupWord>& subgroup,
                        const EnumerationOptions& options) {
  for (const auto& w : subgroup) {
    for (const Letter& l : w.letters()) {
      if (l.gen >= p.generator_count()) throw Error("subgroup word uses an unknown generator");
    }
  }
  Enumerator e(p, subgroup, options);
  return e.run();
}

PermutationGroup perm_image(const CosetTable& t, bool regular) {
  if (!t.closed()) throw Error("perm_image: coset table is not closed");
  if (t.size() > kMaxDegree) throw CapacityError("perm_image: too many cosets");
  std::vector<Permutation> gens;
  for (std::uint32_t g = 0; g < t.generator_count(); ++g) {
    std::vector<Point> images(t.size());
    const std::uint32_t col = t.column(g, false);
    for (std::uint32_t c = 0; c < t.size(); ++c) images[c] = t.at(c, col);
    gens.push_back(Permutation::unchecked(std::move(images)));
  }
  return PermutationGroup(t.size(), std::move(gens), regular);
}

}  // namespace wkc
