#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wkc/abelian.hpp"

namespace wkc {

/// Greedy f-independent basis: repeatedly adds the enumeration-least element
/// independent of C whose image is independent of C^f.
std::vector<AbelianElement> find_f_independent_basis(const ElementOrder& order, const PointedBijection& f);

struct IndependenceBound {
  std::uint64_t count = 0;          // |B_k cap B_k^f| (estimated when !exact)
  std::uint64_t bases = 0;          // |B_k|
  std::uint64_t bound = 0;          // recursion bound
  std::int64_t displayed_bound = 0; // closed form with the (p^j - 2p^(j-1) + j + 1) factor
  bool exact = true;
  std::size_t samples = 0;
  bool pass = false;

  std::string to_json() const;
};

/// |B_k| = prod_{0<=j<k} (p^k - p^j).
std::uint64_t ordered_basis_count(int p, int k);
/// (p^k - 1) prod_{1<=j<k} (p^(k-j)-1)/(p-1) (p^(j+1) - 2p^j + j + 1).
std::uint64_t independence_bound(int p, int k);
std::int64_t independence_bound_displayed(int p, int k);

/// Exact mode enumerates ordered bases (p^k <= 81); otherwise 10^4 random
/// ordered k-tuples with seed 0 estimate the count.
IndependenceBound check_independence_bound(const PointedBijection& f, bool exact);

struct NormalizedBijection {
  PointedBijection g;
  ModMatrix a;  // g = a f b, applied left to right
  ModMatrix b;
  std::vector<AbelianElement> basis;  // the f-independent basis used
};

/// g in GL f GL fixing every standard basis vector.
NormalizedBijection normalize_fix_basis(const ElementOrder& order, const PointedBijection& f);

using IntMatrix = std::vector<std::vector<int>>;

/// N_ij = #{x in C_i# : x^f in C_j} over the cyclic subgroups.
IntMatrix incidence_matrix(const ElementOrder& order, const PointedBijection& f);
/// All row and column sums equal to `sum`, entries non-negative.
bool is_doubly_stochastic(const IntMatrix& m, int sum);

/// p - 1 bijections g with (a^i)^g = (a^g)^i and graph(g) inside R, taken
/// from successive perfect matchings of the incidence support.
std::vector<PointedBijection> extract_power_compatible(const ElementOrder& order, const PointedBijection& f);

/// True iff every (x, x^g) lies in R = {(a^i, b^j) : a^f = b}.
bool graph_within_relation(const ElementOrder& order, const PointedBijection& f, const PointedBijection& g);
bool is_power_compatible(const PointedBijection& g, int p);

struct SingularWitness {
  std::vector<std::size_t> row_order;  // rows of the permuted matrix
  std::vector<std::size_t> col_order;
  std::size_t zero_rows = 0;  // k - l
  std::size_t zero_cols = 0;  // l + 1
};

/// Perfect matching of the support graph, lowest index first; nullopt when
/// there is none. match[i] is the column matched to row i.
std::optional<std::vector<std::size_t>> perfect_matching(const IntMatrix& m);

/// nullopt when some diagonal product is non-zero; otherwise a zero block
/// of size (k-l) x (l+1) placed in the bottom-right corner after permuting.
std::optional<SingularWitness> totally_singular_decompose(const IntMatrix& m);

IntMatrix permute(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

struct SElement {
  std::vector<int> exponents;  // length m
  std::string text;            // e.g. "a1^2a2"
};

/// S(m,n): a_{i1}^{l1} ... a_{is}^{ls} a_j with i1 < ... < is < j <= m and
/// 1 <= l <= n-1.
std::vector<SElement> generate_S(int m, int n);

struct UPair {
  std::string x;
  std::string fx;
  std::string text;  // "(1-x)(1-x^f)" with both filled in
};

/// U(m,n;f) for f a permutation of S(m,n) (points in generate_S order).
std::vector<UPair> generate_U(int m, int n, const Permutation& f);

}  // namespace wkc
