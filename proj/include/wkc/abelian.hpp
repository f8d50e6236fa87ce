#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wkc/perm.hpp"

namespace wkc {

/// Element of a finite abelian group as a digit vector, 0 <= d_i < n_i.
struct AbelianElement {
  std::vector<int> digits;

  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
  friend auto operator<=>(const AbelianElement&, const AbelianElement&) = default;
};

/// Direct product of cyclic groups C_{n_1} x ... x C_{n_r}.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int> cyclic_orders);

  /// A_{p,k}: k copies of C_p, p prime.
  static AbelianGroup elementary(int p, int k);

  const std::vector<int>& cyclic_orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint64_t order() const { return order_; }
  bool homogeneous() const;
  /// The common prime when the group is A_{p,k}, otherwise 0.
  int elementary_prime() const;

  AbelianElement identity() const;
  /// i-th standard generator (digit 1 in slot i).
  AbelianElement generator(std::size_t i) const;
  bool is_identity(const AbelianElement& x) const;
  bool contains(const AbelianElement& x) const;

  /// Mixed-radix code with the first digit most significant; code order is
  /// plain lexicographic order.
  std::uint64_t code(const AbelianElement& x) const;
  AbelianElement element(std::uint64_t code) const;

  AbelianElement negate(const AbelianElement& x) const;
  /// Additive order of x.
  std::uint64_t element_order(const AbelianElement& x) const;

  std::string name() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.orders_ == b.orders_;
  }

 private:
  std::vector<int> orders_;
  std::uint64_t order_ = 1;
};

/// x + scalar * y, componentwise modulo n_i.
AbelianElement combine(const AbelianGroup& a, const AbelianElement& x,
                       const AbelianElement& y, long long scalar = 1);

/// Human-readable additive form such as "a1+2a3"; "0" for the identity.
std::string format_element(const AbelianElement& x, char letter = 'a');

enum class EnumerationMode { plain_lex, graded_lex };

EnumerationMode parse_mode(std::string_view text);
std::string to_string(EnumerationMode mode);

/// A fixed listing of the elements of a group with the identity at position
/// 1. Positions are 1-based throughout, matching cycle notation on A.
class ElementOrder {
 public:
  ElementOrder(AbelianGroup group, EnumerationMode mode);

  const AbelianGroup& group() const { return group_; }
  EnumerationMode mode() const { return mode_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<AbelianElement>& elements() const { return elements_; }

  const AbelianElement& at(std::size_t position) const;
  std::size_t position(const AbelianElement& x) const;
  std::size_t position_of_code(std::uint64_t code) const { return position_[code]; }

 private:
  AbelianGroup group_;
  EnumerationMode mode_;
  std::vector<AbelianElement> elements_;
  std::vector<std::size_t> position_;  // by code
};

/// Rank over GF(p) of a list of digit vectors.
std::size_t rank_mod_p(std::vector<AbelianElement> vectors, int p);

/// True iff C is an (ordered) basis of A = A_{p,k}. Throws for groups that
/// are not elementary abelian.
bool is_basis(const std::vector<AbelianElement>& c, const AbelianGroup& a);

/// Non-trivial cyclic subgroups of A_{p,k}. Each subgroup is named by its
/// enumeration-least element; subgroups are listed in the order of those
/// canonical generators.
class CyclicSubgroupIndex {
 public:
  explicit CyclicSubgroupIndex(const ElementOrder& order);

  std::size_t size() const { return canonical_.size(); }
  const AbelianElement& canonical(std::size_t id) const { return canonical_[id]; }
  std::size_t subgroup_of(const AbelianElement& x) const;
  /// Non-identity members of subgroup `id` as (multiplier, element) with
  /// element == multiplier * canonical(id).
  const std::vector<AbelianElement>& members(std::size_t id) const { return members_[id]; }
  /// s such that x = s * canonical(subgroup_of(x)).
  int multiplier_of(const AbelianElement& x) const;

 private:
  AbelianGroup group_;
  std::vector<AbelianElement> canonical_;
  std::vector<std::vector<AbelianElement>> members_;
  std::vector<std::size_t> line_of_code_;
  std::vector<int> multiplier_of_code_;
};

/// Square matrix over GF(p) acting on row vectors: x -> x M.
struct ModMatrix {
  int p = 2;
  std::size_t n = 0;
  std::vector<int> entries;  // row-major

  int at(std::size_t r, std::size_t c) const { return entries[r * n + c]; }
  int& at(std::size_t r, std::size_t c) { return entries[r * n + c]; }
  static ModMatrix identity(int p, std::size_t n);
  AbelianElement apply(const AbelianElement& x) const;
  ModMatrix operator*(const ModMatrix& other) const;
  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
};

/// The two generators used for GL(k, p): the companion matrix of the least
/// primitive polynomial (a Singer cycle) and the transvection I + E_{12}.
std::vector<ModMatrix> gl_generators(int p, int k);

/// |GL(k,p)| = prod_{j<k} (p^k - p^j).
std::uint64_t gl_order(int p, int k);

/// Matrix M with standard basis rows mapped to the given images.
ModMatrix matrix_from_rows(const std::vector<AbelianElement>& rows, int p);
/// Inverse over GF(p); throws if singular.
ModMatrix inverse(const ModMatrix& m);

enum class ActionDomain { elements, lines };

/// Aut(A_{p,k}) = GL(k,p) as a permutation group. In element mode the points
/// are A# (point j is enumeration position j+2); in line mode the points are
/// the cyclic subgroups in CyclicSubgroupIndex order.
PermutationGroup automorphism_perm_group(const ElementOrder& order, ActionDomain on);

/// Permutation of A# induced by a matrix (element mode numbering).
Permutation matrix_action(const ElementOrder& order, const ModMatrix& m);

/// Identity-fixing bijection between two groups of equal order, stored as a
/// table over element codes.
class PointedBijection {
 public:
  PointedBijection(AbelianGroup domain, AbelianGroup codomain,
                   std::vector<std::uint64_t> table_by_code);

  const AbelianGroup& domain() const { return domain_; }
  const AbelianGroup& codomain() const { return codomain_; }
  AbelianElement operator()(const AbelianElement& x) const;
  std::uint64_t image_code(std::uint64_t code) const { return table_[code]; }
  const std::vector<std::uint64_t>& table() const { return table_; }
  AbelianElement preimage(const AbelianElement& y) const;
  PointedBijection inverse() const;

  /// Permutation of A# in element-mode numbering (domain == codomain).
  Permutation as_permutation(const ElementOrder& order) const;
  static PointedBijection from_permutation(const ElementOrder& order, const Permutation& p);

  friend bool operator==(const PointedBijection& a, const PointedBijection& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.table_ == b.table_;
  }

 private:
  AbelianGroup domain_;
  AbelianGroup codomain_;
  std::vector<std::uint64_t> table_;
};

/// Parses a cycle string on enumeration positions 1..|A|; position 1 (the
/// identity) must be fixed.
PointedBijection bijection_from_cycles(const ElementOrder& order, std::string_view cycles);
/// Image table: images[j] is the position of the image of position j+2.
PointedBijection bijection_from_images(const ElementOrder& order,
                                       const std::vector<std::size_t>& images);
std::string bijection_to_cycles(const ElementOrder& order, const PointedBijection& f);
std::vector<std::size_t> bijection_to_images(const ElementOrder& order, const PointedBijection& f);

PointedBijection identity_bijection(const AbelianGroup& a);
/// f: i a1 -> i a1, i a2 -> i a2, i(a1 + j a2) -> i(a1 - j a2) on A_{p,2}.
PointedBijection example2_map(int p);
/// Swaps two elements given by position, fixes everything else.
PointedBijection transposition(const ElementOrder& order, std::size_t pos_a, std::size_t pos_b);
/// Extends a permutation of the cyclic subgroups (line-mode points) by
/// s*a -> s*b, where a, b are the canonical generators of a line and its
/// image.
PointedBijection line_linear_extension(const ElementOrder& order, const Permutation& on_lines);
/// Bijection induced by an automorphism.
PointedBijection bijection_from_matrix(const AbelianGroup& a, const ModMatrix& m);

/// f-file JSON: {"p":..,"k":..,"mode":..,"images":[...]} serialized compactly.
std::string bijection_to_json(const ElementOrder& order, const PointedBijection& f);
/// Returns the parsed bijection; the order is rebuilt from p, k and mode.
PointedBijection bijection_from_json(std::string_view text, EnumerationMode* mode_out = nullptr);

}  // namespace wkc
