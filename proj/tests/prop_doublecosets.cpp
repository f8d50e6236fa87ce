#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "wkc/abelian.hpp"
#include "wkc/doublecosets.hpp"

using namespace wkc;

namespace {

// Double cosets of U in Sym(n) by union-find over every permutation.
struct BruteDoubleCosets {
  std::map<oracle::Perm, std::size_t> index;
  std::vector<oracle::Perm> perms;
  std::vector<std::size_t> parent;

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  BruteDoubleCosets(const std::vector<oracle::Perm>& gens, std::size_t n) {
    oracle::Perm p = oracle::identity(n);
    do {
      index.emplace(p, perms.size());
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    parent.resize(perms.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < perms.size(); ++i) {
      for (const auto& g : gens) {
        parent[find(i)] = find(index[oracle::mul(g, perms[i])]);
        parent[find(i)] = find(index[oracle::mul(perms[i], g)]);
      }
    }
  }

  std::size_t count() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < perms.size(); ++i) c += find(i) == i;
    return c;
  }

  oracle::Perm least_of(const oracle::Perm& p) {
    const std::size_t root = find(index[p]);
    for (std::size_t k = 0; k < perms.size(); ++k) {
      if (find(k) == root) return perms[k];
    }
    return p;
  }

  // Least element of each class, in sorted order.
  std::vector<oracle::Perm> least() {
    std::map<std::size_t, oracle::Perm> best;
    for (std::size_t i = 0; i < perms.size(); ++i) best.emplace(find(i), perms[i]);  // perms are sorted
    std::vector<oracle::Perm> out;
    for (auto& [k, v] : best) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }
};

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

oracle::Perm raw(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

}  // namespace

TEST_CASE("property: counts, representatives and membership agree with brute force") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = 4 + rng() % 3;
    std::vector<Permutation> gens;
    std::vector<oracle::Perm> raw_gens;
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      gens.push_back(random_perm(rng, n));
      raw_gens.push_back(raw(gens.back()));
    }
    const PermutationGroup u = build_group(n, gens);
    BruteDoubleCosets brute(raw_gens, n);
    CHECK(count_burnside(u) == brute.count());
    const DoubleCosetReport r = enumerate_reps(u);
    std::vector<oracle::Perm> reps;
    for (const auto& p : r.representatives) reps.push_back(raw(p));
    CHECK(reps == brute.least());
    for (int i = 0; i < 10; ++i) {
      const Permutation f = random_perm(rng, n), g = random_perm(rng, n);
      const bool same = brute.find(brute.index[raw(f)]) == brute.find(brute.index[raw(g)]);
      CHECK(same_double_coset(u, f, g).has_value() == same);
      CHECK(raw(canonical_double_coset_rep(u, f)) == brute.least_of(raw(f)));
    }
  }
}

TEST_CASE("property: SL(3,2) double cosets by brute force") {
  const ElementOrder order(AbelianGroup::elementary(2, 3), EnumerationMode::graded_lex);
  const PermutationGroup u = automorphism_perm_group(order, ActionDomain::elements);
  std::vector<oracle::Perm> gens;
  for (const auto& g : u.generators()) gens.push_back(raw(g));
  BruteDoubleCosets brute(gens, 7);
  CHECK(brute.count() == 4);
  std::vector<oracle::Perm> reps;
  for (const auto& p : enumerate_reps(u).representatives) reps.push_back(raw(p));
  CHECK(reps == brute.least());
}
