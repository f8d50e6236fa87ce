#include "wkc/doublecosets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "wkc/error.hpp"

namespace wkc {

namespace {

using boost::multiprecision::cpp_int;

std::vector<Permutation> all_elements(const PermutationGroup& u) {
  if (u.order() > kMaxGroupElements) throw CapacityError("group too large to enumerate");
  return u.chain().elements(kMaxGroupElements);
}

// |C_Sym(n)(x)| = prod_k k^(m_k) m_k! for m_k cycles of length k.
cpp_int centralizer_order(const std::vector<std::size_t>& type) {
  std::map<std::size_t, std::size_t> mult;
  for (std::size_t k : type) ++mult[k];
  cpp_int z = 1;
  for (auto [k, m] : mult) {
    for (std::size_t i = 1; i <= m; ++i) z *= cpp_int(k) * i;
  }
  return z;
}

struct VecHash {
  std::size_t operator()(const std::vector<Point>& v) const {
    std::size_t h = 14695981039346656037ull;
    for (Point x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Transversals for the point stabilizer chain with base 0, 1, ..., n-1.
// least(g) walks down the chain choosing the image that minimizes the next
// entry, giving the lexicographically least element of U g.
class LexChain {
 public:
  explicit LexChain(const std::vector<Permutation>& elems) {
    const std::size_t n = elems.front().degree();
    levels_.resize(n);
    std::vector<const Permutation*> current;
    for (const auto& x : elems) current.push_back(&x);
    for (std::size_t j = 0; j < n && current.size() > 1; ++j) {
      std::vector<const Permutation*> next;
      for (const Permutation* x : current) {
        const Point b = x->images()[j];
        bool seen = false;
        for (const auto& [pt, t] : levels_[j]) seen = seen || pt == b;
        if (!seen) levels_[j].emplace_back(b, x);
        if (b == j) next.push_back(x);
      }
      current = std::move(next);
    }
  }

  Permutation least(const Permutation& g) const {
    std::vector<Point> c(g.images().begin(), g.images().end());
    std::vector<Point> tmp(c.size());
    for (const auto& level : levels_) {
      if (level.size() <= 1) continue;
      const Permutation* best = nullptr;
      Point best_value = 0;
      for (const auto& [b, t] : level) {
        if (best == nullptr || c[b] < best_value) {
          best = t;
          best_value = c[b];
        }
      }
      for (std::size_t x = 0; x < c.size(); ++x) tmp[x] = c[best->images()[x]];
      c.swap(tmp);
    }
    return Permutation::unchecked(c);
  }

 private:
  std::vector<std::vector<std::pair<Point, const Permutation*>>> levels_;
};

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::string to_string(DoubleCosetMethod m) {
  return m == DoubleCosetMethod::burnside ? "burnside" : "orbit-enumeration";
}

std::string DoubleCosetReport::to_json(const std::string& group_name) const {
  nlohmann::ordered_json j;
  j["group"] = group_name;
  j["n"] = representatives.empty() ? 0 : representatives.front().degree();
  j["method"] = to_string(method);
  j["count"] = count;
  j["representatives"] = nlohmann::json::array();
  for (const auto& r : representatives) j["representatives"].push_back(r.to_cycles().empty() ? "()" : r.to_cycles());
  return j.dump();
}

std::uint64_t count_burnside(const PermutationGroup& u) {
  std::map<std::vector<std::size_t>, std::uint64_t> types;
  for (const auto& x : all_elements(u)) ++types[x.cycle_type()];
  cpp_int total = 0;
  for (const auto& [type, m] : types) total += cpp_int(m) * m * centralizer_order(type);
  const cpp_int uu = cpp_int(u.order()) * u.order();
  if (total % uu != 0) throw Error("count_burnside: orbit count is not integral");
  return static_cast<std::uint64_t>(total / uu);
}

DoubleCosetReport enumerate_reps(const PermutationGroup& u, std::size_t index_cap) {
  const std::size_t n = u.degree();
  cpp_int fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  const cpp_int index = fact / u.order();
  if (index > index_cap) throw CapacityError("enumerate_reps: index exceeds the cap");
  const std::vector<Permutation> elems = all_elements(u);

  // Right coset Ug labelled by its least element min_u (u g).
  const LexChain chain(elems);
  auto least = [&](const Permutation& g) { return chain.least(g); };

  std::vector<Permutation> sym_gens;
  if (n >= 2) {
    std::vector<Point> t(n), c(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>((i + 1) % n);
    sym_gens.push_back(Permutation::unchecked(t));
    sym_gens.push_back(Permutation::unchecked(c));
  }
  std::vector<Permutation> cosets{least(Permutation::identity(n))};
  std::unordered_map<std::vector<Point>, std::size_t, VecHash> index_of;
  auto key = [](const Permutation& p) { return std::vector<Point>(p.images().begin(), p.images().end()); };
  index_of.emplace(key(cosets[0]), 0);
  auto label = [&](const Permutation& g) {
    Permutation m = least(g);
    auto [it, fresh] = index_of.emplace(key(m), cosets.size());
    if (fresh) cosets.push_back(std::move(m));
    return it->second;
  };
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (const auto& s : sym_gens) label(cosets[i] * s);
  }
  std::vector<std::size_t> parent(cosets.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (const auto& v : u.generators()) {
      const std::size_t j = label(cosets[i] * v);
      parent[find(parent, i)] = find(parent, j);
    }
  }
  // Cosets are labelled by their least elements, so a double coset's least
  // element is the least label among its right cosets.
  std::map<std::size_t, std::pair<std::size_t, std::uint64_t>> classes;  // root -> (best coset, size)
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    auto [it, fresh] = classes.emplace(find(parent, i), std::pair{i, 0});
    if (cosets[i] < cosets[it->second.first]) it->second.first = i;
    it->second.second += u.order();
  }
  DoubleCosetReport r;
  r.method = DoubleCosetMethod::orbit_enumeration;
  std::vector<std::pair<Permutation, std::uint64_t>> reps;
  for (const auto& [root, v] : classes) reps.emplace_back(cosets[v.first], v.second);
  std::sort(reps.begin(), reps.end());
  for (auto& [p, s] : reps) {
    r.representatives.push_back(p);
    r.sizes.push_back(s);
  }
  r.count = r.representatives.size();
  return r;
}

Permutation canonical_double_coset_rep(const PermutationGroup& u, const Permutation& g) {
  if (u.order() > 10000) throw CapacityError("canonical_double_coset_rep: group above 10^4 elements");
  const std::vector<Permutation> elems = all_elements(u);
  Permutation best = g;
  for (const auto& a : elems) {
    const Permutation ag = a * g;
    for (const auto& b : elems) {
      Permutation c = ag * b;
      if (c < best) best = std::move(c);
    }
  }
  return best;
}

std::optional<DoubleCosetWitness> same_double_coset(const PermutationGroup& u, const Permutation& f,
                                                    const Permutation& g) {
  if (f.degree() != g.degree() || f.degree() != u.degree()) throw Error("same_double_coset: degree mismatch");
  // g = a f b with b = (a f)^-1 g; search a and test b for membership.
  for (const auto& a : all_elements(u)) {
    Permutation b = (a * f).inverse() * g;
    if (u.contains(b)) return DoubleCosetWitness{a, std::move(b)};
  }
  return std::nullopt;
}

}  // namespace wkc
