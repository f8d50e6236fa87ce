#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wkc/error.hpp"

namespace wkc {

using Point = std::uint32_t;

/// Largest degree any permutation routine accepts.
inline constexpr std::size_t kMaxDegree = std::size_t{1} << 21;

/// A bijection of {0, ..., degree-1}, stored as its image array.
///
/// Products act on the right: compose(p, q) applies p first, then q.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Wraps an image array already known to be a bijection.
  static Permutation unchecked(std::vector<Point> images);

  /// Parses cycle notation with 1-based points, e.g. "(2,7,4)(6,8)". "()" is
  /// the identity. Points above `degree` are rejected.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  /// Smallest moved point, or degree() when the permutation is the identity.
  Point first_moved() const;

  /// Cycle lengths including fixed points, sorted ascending.
  std::vector<std::size_t> cycle_type() const;
  /// Element order as the lcm of the cycle lengths.
  std::uint64_t order() const;

  /// 1-based cycle notation with fixed points omitted.
  std::string to_cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}
/// g^-1 p g.
Permutation conjugate(const Permutation& p, const Permutation& g);
/// p^-1 q^-1 p q.
Permutation commutator(const Permutation& p, const Permutation& q);

/// Smallest subset of points containing `point` and closed under `gens`.
std::vector<Point> orbit_of(Point point, std::span<const Permutation> gens,
                            std::size_t degree);

/// Orbits of all points, each sorted, listed by smallest element.
std::vector<std::vector<Point>> orbits(std::span<const Permutation> gens,
                                       std::size_t degree);

/// One level of a stabilizer chain. The transversal is kept implicitly as a
/// Schreier vector; `parent_gen[x]` is the index into `gens` of the edge that
/// reached x, `-1` for the base point and `-2` for points outside the orbit.
struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> gens;
  std::vector<Permutation> gen_inverses;
  std::vector<Point> orbit;
  std::vector<std::int32_t> parent_gen;
  std::vector<Point> parent_point;
  /// Explicit representatives, parallel to `orbit`, present when the level is
  /// small enough to store them.
  std::vector<Permutation> transversal;
  std::vector<std::int32_t> orbit_index;

  bool in_orbit(Point x) const { return orbit_index[x] >= 0; }
  /// Element u of the level group with base^u == x.
  Permutation representative(Point x) const;
};

/// Base and strong generating set. Built deterministically: each new level's
/// base point is the first point moved by the residue that created it.
class StabilizerChain {
 public:
  StabilizerChain() = default;
  StabilizerChain(std::size_t degree, std::span<const Permutation> gens);

  /// Single-level chain for a group known to act semiregularly.
  static StabilizerChain semiregular(std::size_t degree,
                                     std::span<const Permutation> gens);

  std::size_t degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  std::vector<Point> base() const;

  /// Exact group order (product of orbit lengths). Throws CapacityError on
  /// 64-bit overflow.
  std::uint64_t order() const;

  /// Sifts g through the chain; returns the residue (identity iff member).
  Permutation sift(const Permutation& g, std::size_t from_level = 0) const;
  bool contains(const Permutation& g) const;

  /// Every group element, in chain order. Throws CapacityError beyond `cap`.
  std::vector<Permutation> elements(std::size_t cap) const;

 private:
  void rebuild_orbit(std::size_t level);
  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
};

/// Finitely generated permutation group. Immutable; the chain is built on
/// first use and shared between copies.
class PermutationGroup {
 public:
  PermutationGroup() = default;
  PermutationGroup(std::size_t degree, std::vector<Permutation> gens,
                   bool semiregular = false);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  /// True when the group is known to act semiregularly (every non-identity
  /// element fixes no point), as for regular coset-table images and their
  /// subgroups.
  bool semiregular() const { return semiregular_; }

  const StabilizerChain& chain() const;
  std::uint64_t order() const { return chain().order(); }
  bool contains(const Permutation& g) const { return chain().contains(g); }
  bool is_trivial() const;

 private:
  struct Lazy;
  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  bool semiregular_ = false;
  std::shared_ptr<Lazy> lazy_;
};

PermutationGroup build_group(std::size_t degree, std::vector<Permutation> gens);

/// Smallest subgroup of the symmetric group normalized by `g`'s generators
/// that contains `seeds`.
PermutationGroup normal_closure(const PermutationGroup& g,
                                std::span<const Permutation> seeds);

/// [H, K]: the normal closure in <H, K> of the commutators of generators.
PermutationGroup commutator_subgroup(const PermutationGroup& h,
                                     const PermutationGroup& k);

}  // namespace wkc
