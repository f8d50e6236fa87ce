#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wkc/perm.hpp"

namespace wkc {

enum class DoubleCosetMethod { burnside, orbit_enumeration };

std::string to_string(DoubleCosetMethod m);

struct DoubleCosetReport {
  std::uint64_t count = 0;
  std::vector<Permutation> representatives;
  /// |U r U| for each representative, parallel to `representatives`.
  std::vector<std::uint64_t> sizes;
  DoubleCosetMethod method = DoubleCosetMethod::burnside;

  /// {"group", "n", "method", "count", "representatives": [cycles]}.
  std::string to_json(const std::string& group_name) const;
};

inline constexpr std::size_t kMaxGroupElements = 1000000;
inline constexpr std::size_t kDefaultIndexCap = 2000000;

/// Number of double cosets U\Sym(n)/U, counted as orbits of U x U acting by
/// g -> u g v^-1: the sum over cycle types t of m_t(U)^2 |C_Sym(n)(t)| / |U|^2.
std::uint64_t count_burnside(const PermutationGroup& u);

/// One representative per double coset: the lexicographically least image
/// array in U g U. Right cosets Ug are found by breadth-first search from U
/// and merged under right multiplication by U. Throws CapacityError when
/// [Sym(n) : U] exceeds `index_cap`.
DoubleCosetReport enumerate_reps(const PermutationGroup& u, std::size_t index_cap = kDefaultIndexCap);

/// Lexicographically least element of U g U.
Permutation canonical_double_coset_rep(const PermutationGroup& u, const Permutation& g);

struct DoubleCosetWitness {
  Permutation a;
  Permutation b;
};

/// Decides g in U f U; when true, returns (a, b) in U with g = a f b.
std::optional<DoubleCosetWitness> same_double_coset(const PermutationGroup& u, const Permutation& f,
                                                    const Permutation& g);

}  // namespace wkc
