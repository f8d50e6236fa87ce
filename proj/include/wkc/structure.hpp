#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wkc/enumerator.hpp"
#include "wkc/perm.hpp"
#include "wkc/presentation.hpp"

namespace wkc {

/// A finite group acting on itself: point x is the element reached from the
/// identity (point 0) by x's word. Right multiplication by each generator is
/// stored as a permutation, and so is left multiplication, which commutes
/// with every right translation. Together these give O(1) conjugation by a
/// generator and O(|G|) materialization of any right translation.
class RegularGroup {
 public:
  /// `right_gens` must act regularly (transitively with trivial stabilizers).
  explicit RegularGroup(std::vector<Permutation> right_gens);
  static RegularGroup from_table(const CosetTable& regular_table);
  /// Regular representation of a permutation group, built from its elements.
  static RegularGroup from_group(const PermutationGroup& g, std::size_t cap = std::size_t{1} << 20);

  std::size_t order() const { return n_; }
  std::size_t generator_count() const { return right_.size(); }
  Point generator(std::size_t i) const { return right_[i][0]; }

  Point mul(Point x, Point y) const;
  Point inv(Point x) const;
  Point pow(Point x, long long e) const;
  /// y^-1 x y.
  Point conj(Point x, Point y) const;
  /// x^-1 y^-1 x y.
  Point comm(Point x, Point y) const;
  /// Left-normed commutator of the listed points.
  Point comm(const std::vector<Point>& xs) const;
  /// Conjugation by generator i, O(1).
  Point conj_gen(Point x, std::size_t i) const { return right_[i][left_inv_[i][x]]; }
  /// True iff x commutes with generator i.
  bool commutes_with_gen(Point x, std::size_t i) const { return right_[i][x] == left_[i][x]; }

  Point evaluate(const GroupWord& w) const;
  /// Shortest-path word in the positive generators.
  GroupWord word(Point x) const;
  std::uint64_t element_order(Point x) const;

  /// Right translation y -> y x as an image array.
  std::vector<Point> right_translation(Point x) const;

  const std::vector<Point>& right_gen(std::size_t i) const { return right_[i]; }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<Point>> right_;
  std::vector<std::vector<Point>> right_inv_;
  std::vector<std::vector<Point>> left_;
  std::vector<std::vector<Point>> left_inv_;
  // Breadth-first tree by right multiplication: x = parent * gen.
  std::vector<Point> rorder_;
  std::vector<Point> rparent_;
  std::vector<std::uint8_t> rgen_;
  // Breadth-first tree by left multiplication: x = gen * parent.
  std::vector<Point> lorder_;
  std::vector<Point> lparent_;
  std::vector<std::uint8_t> lgen_;
};

/// Subgroup of a RegularGroup kept as a generating list plus a membership
/// table.
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup trivial(const RegularGroup& g);
  static Subgroup whole(const RegularGroup& g);
  static Subgroup generated(const RegularGroup& g, const std::vector<Point>& gens);

  std::size_t order() const { return order_; }
  const std::vector<Point>& generators() const { return gens_; }
  bool contains(Point x) const { return member_[x] != 0; }
  bool is_trivial() const { return order_ == 1; }
  std::vector<Point> elements() const;

  /// Adds generators, growing the membership table incrementally.
  void extend(const RegularGroup& g, const std::vector<Point>& more);

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.order_ == b.order_ && a.member_ == b.member_;
  }
  bool subset_of(const Subgroup& other) const;

 private:
  std::vector<Point> gens_;
  std::vector<std::uint8_t> member_;
  std::size_t order_ = 0;
};

/// Smallest subgroup normal in G containing the seeds.
Subgroup normal_closure(const RegularGroup& g, const std::vector<Point>& seeds);
/// Smallest subgroup normalized by `ambient` containing the seeds.
Subgroup normal_closure_in(const RegularGroup& g, const Subgroup& ambient, const std::vector<Point>& seeds);
/// [A, B] = normal closure in <A, B> of the generator commutators.
Subgroup commutator_subgroup(const RegularGroup& g, const Subgroup& a, const Subgroup& b);
/// Subgroup generated by {[x, y] : x in xs, y in ys} (no closure under
/// conjugation).
Subgroup commutator_set_subgroup(const RegularGroup& g, const std::vector<Point>& xs,
                                 const std::vector<Point>& ys);
/// [N, G] for N normal in G.
Subgroup commutator_with_whole(const RegularGroup& g, const Subgroup& n);
Subgroup center(const RegularGroup& g);
/// Exponent of a subgroup, from the orders of all its elements.
std::uint64_t exponent(const RegularGroup& g, const Subgroup& s);
/// Lower central series G = g1 > g2 > ... until it stabilizes.
std::vector<Subgroup> lower_central_series(const RegularGroup& g);
std::vector<Subgroup> derived_series(const RegularGroup& g);
/// Least c with gamma_{c+1}(G) inside N (N normal); nullopt if none.
std::optional<int> class_modulo(const RegularGroup& g, const Subgroup& n);
/// Invariants of G/N for N normal with abelian quotient, as prime powers in
/// ascending order.
std::vector<std::uint64_t> abelian_invariants(const RegularGroup& g, const Subgroup& n);

struct GroupAnalysis {
  std::uint64_t order = 0;
  std::optional<int> nilpotency_class;
  int derived_length = 0;
  std::vector<std::uint64_t> lcs_quotients;
  std::vector<std::uint64_t> derived_quotients;
  std::uint64_t exponent = 0;
  bool exponent_exact = true;
  std::uint64_t derived_exponent = 0;
  std::uint64_t center_order = 0;
  std::vector<std::uint64_t> abelian_invariants;

  /// Ordered tuple of every field, as a string, for comparisons.
  std::string fingerprint() const;
  std::string to_json() const;
};

struct AnalysisOptions {
  /// Element orders are scanned exhaustively up to this order; above it the
  /// exponent is bounded instead.
  std::uint64_t exact_exponent_limit = std::uint64_t{1} << 20;
};

GroupAnalysis analyze(const RegularGroup& g, const AnalysisOptions& options = {});
GroupAnalysis analyze(const PermutationGroup& g, const AnalysisOptions& options = {});

/// "p^e" when the order is a prime power, the decimal value otherwise.
std::string format_order(std::uint64_t order);

// ---------------------------------------------------------------------------

/// Regular image of a presentation with its generator names.
struct GroupImage {
  Presentation presentation;
  RegularGroup group;
  Point element(const GroupWord& w) const { return group.evaluate(w); }
  Point element(std::string_view word) const;
};

/// Enumerates over the trivial subgroup; throws CapacityError on overflow.
GroupImage regular_image(const Presentation& p, const EnumerationOptions& options = {});

struct ClauseResult {
  std::string clause;
  bool pass = false;
  std::string witness;
  std::string detail;
};

struct Report {
  std::string name;
  std::vector<ClauseResult> clauses;
  bool pass() const;
  void add(std::string clause, bool pass, std::string detail = {}, std::string witness = {});
  std::string to_json() const;
};

enum class Quantifier { generators, all_elements };

/// Variables in an identity range over either the generators of side A
/// (the first `side_rank` presentation generators) or over all elements of
/// the subgroup they generate. A variable followed by ^t is read in side B
/// through the natural copy a_i -> b_i.
struct IdentitySpec {
  std::string lhs;
  std::string rhs;
  std::vector<std::string> variables;
  Quantifier over = Quantifier::generators;
};

/// Checks lhs == rhs for every assignment. Expression syntax: names and
/// variables, '*', '^n', '^t', '^name' (conjugation), '[x,y,...]', '(...)'.
/// The witness lists the failing assignment and both sides as words.
ClauseResult verify_identity(const GroupImage& img, const AbelianGroup& side, const IdentitySpec& spec,
                             std::size_t element_limit = 4096);

/// Value of an expression without variables.
Point evaluate_expression(const GroupImage& img, std::string_view expr);

// ---------------------------------------------------------------------------

struct ExtensionInstance {
  Extension extension;
  GroupImage image;
};

ExtensionInstance make_extension_instance(ExtensionSpec spec, const EnumerationOptions& options = {});

/// Executable form of the extension theorem: V abelian, V = M N [V,G~],
/// the commutator chain, the lower central identities, the exponent
/// divisibility and the two central sets.
Report check_extension_theorem(const ExtensionInstance& e);
/// <M,N>^G~ elementary abelian of rank at most |H| + 1 (M, N of prime order).
Report check_rank_theorem(const ExtensionInstance& e);
/// class(G/G'') <= |A|.
Report check_metabelian_quotient(const GroupImage& img, std::uint64_t bound);

}  // namespace wkc
