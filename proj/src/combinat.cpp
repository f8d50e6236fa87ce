#include "wkc/combinat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "json.hpp"
#include "wkc/error.hpp"

namespace wkc {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int prime_of(const AbelianGroup& a) {
  const int p = a.elementary_prime();
  if (p == 0) throw Error("expected an elementary abelian group A_{p,k}");
  return p;
}

// Membership table of a GF(p)-span, indexed by element code.
class Span {
 public:
  Span(const AbelianGroup& a) : a_(a), in_(a.order(), 0) { in_[a.code(a.identity())] = 1; }

  bool contains(const AbelianElement& x) const { return in_[a_.code(x)] != 0; }

  void add(const AbelianElement& x, int p) {
    std::vector<std::uint64_t> old;
    for (std::uint64_t c = 0; c < in_.size(); ++c) {
      if (in_[c]) old.push_back(c);
    }
    for (std::uint64_t c : old) {
      AbelianElement y = a_.element(c);
      for (int i = 1; i < p; ++i) {
        y = combine(a_, y, x);
        in_[a_.code(y)] = 1;
      }
    }
  }

 private:
  const AbelianGroup& a_;
  std::vector<std::uint8_t> in_;
};

std::string element_text(const AbelianElement& x) {
  std::string s;
  for (std::size_t i = 0; i < x.digits.size(); ++i) {
    if (x.digits[i] == 0) continue;
    s += "a" + std::to_string(i + 1);
    if (x.digits[i] > 1) s += "^" + std::to_string(x.digits[i]);
  }
  return s;
}

}  // namespace

std::vector<AbelianElement> find_f_independent_basis(const ElementOrder& order, const PointedBijection& f) {
  const AbelianGroup& a = order.group();
  const int p = prime_of(a);
  std::vector<AbelianElement> c;
  Span u(a), w(a);
  while (c.size() < a.rank()) {
    bool grown = false;
    for (std::size_t pos = 2; pos <= order.size() && !grown; ++pos) {
      const AbelianElement& x = order.at(pos);
      const AbelianElement fx = f(x);
      if (!u.contains(x) && !w.contains(fx)) {
        c.push_back(x);
        u.add(x, p);
        w.add(fx, p);
        grown = true;
      }
    }
    if (!grown) throw Error("find_f_independent_basis: greedy extension failed");
  }
  return c;
}

std::uint64_t ordered_basis_count(int p, int k) {
  std::uint64_t r = 1;
  for (int j = 0; j < k; ++j) r *= ipow(p, k) - ipow(p, j);
  return r;
}

std::uint64_t independence_bound(int p, int k) {
  std::uint64_t r = ipow(p, k) - 1;
  for (int j = 1; j <= k - 1; ++j) {
    r *= (ipow(p, k - j) - 1) / (p - 1);
    r *= ipow(p, j + 1) - 2 * ipow(p, j) + j + 1;
  }
  return r;
}

std::int64_t independence_bound_displayed(int p, int k) {
  std::int64_t r = static_cast<std::int64_t>(ipow(p, k)) - 1;
  for (int j = 1; j <= k - 1; ++j) {
    r *= static_cast<std::int64_t>((ipow(p, k - j) - 1) / (p - 1));
    r *= static_cast<std::int64_t>(ipow(p, j)) - 2 * static_cast<std::int64_t>(ipow(p, j - 1)) + j + 1;
  }
  return r;
}

std::string IndependenceBound::to_json() const {
  nlohmann::ordered_json j;
  j["count"] = count;
  j["bases"] = bases;
  j["bound"] = bound;
  j["displayed_bound"] = displayed_bound;
  j["exact"] = exact;
  if (!exact) j["samples"] = samples;
  j["pass"] = pass;
  return j.dump();
}

IndependenceBound check_independence_bound(const PointedBijection& f, bool exact) {
  const AbelianGroup& a = f.domain();
  const int p = prime_of(a);
  const int k = static_cast<int>(a.rank());
  IndependenceBound r;
  r.bases = ordered_basis_count(p, k);
  r.bound = independence_bound(p, k);
  r.displayed_bound = independence_bound_displayed(p, k);
  r.exact = exact;
  if (exact) {
    if (a.order() > 81) throw CapacityError("exact independence count limited to p^k <= 81");
    std::vector<AbelianElement> nonzero;
    for (std::uint64_t c = 1; c < a.order(); ++c) nonzero.push_back(a.element(c));
    std::function<std::uint64_t(const Span&, const Span&, int)> dfs = [&](const Span& u, const Span& w, int depth) {
      if (depth == k) return std::uint64_t{1};
      std::uint64_t n = 0;
      for (const auto& x : nonzero) {
        const AbelianElement fx = f(x);
        if (u.contains(x) || w.contains(fx)) continue;
        Span u2 = u, w2 = w;
        u2.add(x, p);
        w2.add(fx, p);
        n += dfs(u2, w2, depth + 1);
      }
      return n;
    };
    r.count = dfs(Span(a), Span(a), 0);
  } else {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::uint64_t> pick(1, a.order() - 1);
    r.samples = 10000;
    std::uint64_t hits = 0;
    for (std::size_t s = 0; s < r.samples; ++s) {
      std::vector<AbelianElement> c, fc;
      for (int i = 0; i < k; ++i) {
        c.push_back(a.element(pick(rng)));
        fc.push_back(f(c.back()));
      }
      if (rank_mod_p(c, p) == static_cast<std::size_t>(k) && rank_mod_p(fc, p) == static_cast<std::size_t>(k)) ++hits;
    }
    const long double tuples = static_cast<long double>(ipow(a.order() - 1, k));
    r.count = static_cast<std::uint64_t>(tuples * hits / r.samples + 0.5L);
  }
  r.pass = r.count >= r.bound;
  return r;
}

NormalizedBijection normalize_fix_basis(const ElementOrder& order, const PointedBijection& f) {
  const AbelianGroup& a = order.group();
  const int p = prime_of(a);
  NormalizedBijection n{f, ModMatrix::identity(p, a.rank()), ModMatrix::identity(p, a.rank()), {}};
  n.basis = find_f_independent_basis(order, f);
  std::vector<AbelianElement> images;
  for (const auto& c : n.basis) images.push_back(f(c));
  n.a = matrix_from_rows(n.basis, p);          // e_i -> c_i
  n.b = inverse(matrix_from_rows(images, p));  // f(c_i) -> e_i
  std::vector<std::uint64_t> table(a.order());
  for (std::uint64_t c = 0; c < a.order(); ++c) {
    table[c] = a.code(n.b.apply(f(n.a.apply(a.element(c)))));
  }
  n.g = PointedBijection(a, a, std::move(table));
  return n;
}

IntMatrix incidence_matrix(const ElementOrder& order, const PointedBijection& f) {
  CyclicSubgroupIndex lines(order);
  IntMatrix m(lines.size(), std::vector<int>(lines.size(), 0));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const auto& x : lines.members(i)) ++m[i][lines.subgroup_of(f(x))];
  }
  return m;
}

bool is_doubly_stochastic(const IntMatrix& m, int sum) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    int row = 0, col = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[i][j] < 0 || m[j][i] < 0) return false;
      row += m[i][j];
      col += m[j][i];
    }
    if (row != sum || col != sum) return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> perfect_matching(const IntMatrix& m) {
  const std::size_t k = m.size();
  constexpr std::size_t kFree = SIZE_MAX;
  std::vector<std::size_t> row_of(k, kFree), col_of(k, kFree);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (m[r][c] <= 0 || seen[c]) continue;
      seen[c] = 1;
      if (row_of[c] == kFree || augment(row_of[c])) {
        row_of[c] = r;
        col_of[r] = c;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < k; ++r) {
    seen.assign(k, 0);
    if (!augment(r)) return std::nullopt;
  }
  return col_of;
}

std::optional<SingularWitness> totally_singular_decompose(const IntMatrix& m) {
  const std::size_t k = m.size();
  constexpr std::size_t kFree = SIZE_MAX;
  std::vector<std::size_t> row_of(k, kFree), col_of(k, kFree);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (m[r][c] <= 0 || seen[c]) continue;
      seen[c] = 1;
      if (row_of[c] == kFree || augment(row_of[c])) {
        row_of[c] = r;
        col_of[r] = c;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < k; ++r) {
    seen.assign(k, 0);
    augment(r);
  }
  if (std::find(col_of.begin(), col_of.end(), kFree) == col_of.end()) return std::nullopt;
  // Koenig: rows and columns reachable from unmatched rows by alternating
  // paths. Reached rows meet only reached columns, so reached rows x
  // unreached columns is a zero block with at least k + 1 lines.
  std::vector<char> row_z(k, 0), col_z(k, 0);
  std::vector<std::size_t> queue;
  for (std::size_t r = 0; r < k; ++r) {
    if (col_of[r] == kFree) {
      row_z[r] = 1;
      queue.push_back(r);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t r = queue[i];
    for (std::size_t c = 0; c < k; ++c) {
      if (m[r][c] > 0 && !col_z[c]) {
        col_z[c] = 1;
        const std::size_t r2 = row_of[c];
        if (r2 != kFree && !row_z[r2]) {
          row_z[r2] = 1;
          queue.push_back(r2);
        }
      }
    }
  }
  std::vector<std::size_t> zero_rows, other_rows, zero_cols, other_cols;
  for (std::size_t r = 0; r < k; ++r) (row_z[r] ? zero_rows : other_rows).push_back(r);
  for (std::size_t c = 0; c < k; ++c) (col_z[c] ? other_cols : zero_cols).push_back(c);
  // Trim the column set so that the block dimensions sum to k + 1.
  const std::size_t want_cols = k + 1 - zero_rows.size();
  while (zero_cols.size() > want_cols) {
    other_cols.push_back(zero_cols.front());
    zero_cols.erase(zero_cols.begin());
  }
  std::sort(other_cols.begin(), other_cols.end());
  SingularWitness w;
  w.zero_rows = zero_rows.size();
  w.zero_cols = zero_cols.size();
  w.row_order = other_rows;
  w.row_order.insert(w.row_order.end(), zero_rows.begin(), zero_rows.end());
  w.col_order = other_cols;
  w.col_order.insert(w.col_order.end(), zero_cols.begin(), zero_cols.end());
  return w;
}

IntMatrix permute(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix r(rows.size(), std::vector<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) r[i][j] = m[rows[i]][cols[j]];
  }
  return r;
}

std::vector<PointedBijection> extract_power_compatible(const ElementOrder& order, const PointedBijection& f) {
  const AbelianGroup& a = order.group();
  const int p = prime_of(a);
  CyclicSubgroupIndex lines(order);
  IntMatrix n = incidence_matrix(order, f);
  std::vector<std::vector<char>> used(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) used[i].assign(lines.members(i).size(), 0);
  std::vector<PointedBijection> out;
  for (int round = 0; round < p - 1; ++round) {
    auto match = perfect_matching(n);
    if (!match) throw Error("extract_power_compatible: no perfect matching on a regular support");
    std::vector<std::uint64_t> table(a.order(), 0);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::size_t j = (*match)[i];
      // First unused edge x -> x^f from line i into line j.
      const auto& mem = lines.members(i);
      std::size_t e = 0;
      while (e < mem.size() && (used[i][e] || lines.subgroup_of(f(mem[e])) != j)) ++e;
      if (e == mem.size()) throw Error("extract_power_compatible: missing edge");
      used[i][e] = 1;
      --n[i][j];
      const AbelianElement x = mem[e];
      const AbelianElement y = f(x);
      // g(s x) = s y for every multiplier s.
      AbelianElement sx = x, sy = y;
      for (int s = 1; s < p; ++s) {
        table[a.code(sx)] = a.code(sy);
        sx = combine(a, sx, x);
        sy = combine(a, sy, y);
      }
    }
    out.emplace_back(a, a, std::move(table));
  }
  return out;
}

bool graph_within_relation(const ElementOrder& order, const PointedBijection& f, const PointedBijection& g) {
  CyclicSubgroupIndex lines(order);
  const AbelianGroup& a = order.group();
  for (std::uint64_t c = 1; c < a.order(); ++c) {
    const AbelianElement x = a.element(c);
    const std::size_t target = lines.subgroup_of(g(x));
    bool ok = false;
    for (const auto& m : lines.members(lines.subgroup_of(x))) ok = ok || lines.subgroup_of(f(m)) == target;
    if (!ok) return false;
  }
  return true;
}

bool is_power_compatible(const PointedBijection& g, int p) {
  const AbelianGroup& a = g.domain();
  for (std::uint64_t c = 1; c < a.order(); ++c) {
    const AbelianElement x = a.element(c);
    const AbelianElement gx = g(x);
    AbelianElement sx = x, sgx = gx;
    for (int s = 1; s < p; ++s) {
      if (g(sx) != sgx) return false;
      sx = combine(a, sx, x);
      sgx = combine(a, sgx, gx);
    }
  }
  return true;
}

std::vector<SElement> generate_S(int m, int n) {
  if (m < 1 || n < 2) throw Error("generate_S: need m >= 1 and n >= 2");
  std::vector<SElement> out;
  for (int s = 0; s <= m - 1; ++s) {
    // Index tuples i1 < ... < is < j, then exponent tuples, both in lex order.
    std::vector<int> idx(s + 1);
    std::function<void(int, int)> choose = [&](int pos, int from) {
      if (pos == s + 1) {
        std::vector<int> l(s, 1);
        for (;;) {
          SElement e;
          e.exponents.assign(m, 0);
          for (int t = 0; t < s; ++t) e.exponents[idx[t] - 1] = l[t];
          e.exponents[idx[s] - 1] = 1;
          AbelianElement x{e.exponents};
          e.text = element_text(x);
          out.push_back(std::move(e));
          int t = s - 1;
          while (t >= 0 && l[t] == n - 1) l[t--] = 1;
          if (t < 0) break;
          ++l[t];
        }
        return;
      }
      for (int i = from; i <= m; ++i) {
        idx[pos] = i;
        choose(pos + 1, i + 1);
      }
    };
    choose(0, 1);
  }
  return out;
}

std::vector<UPair> generate_U(int m, int n, const Permutation& f) {
  const auto s = generate_S(m, n);
  if (f.degree() != s.size()) throw Error("generate_U: f is not a permutation of S(m,n)");
  std::vector<UPair> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string& x = s[i].text;
    const std::string& fx = s[f[static_cast<Point>(i)]].text;
    out.push_back({x, fx, "(1-" + x + ")(1-" + fx + ")"});
  }
  return out;
}

}  // namespace wkc
