#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wkc/abelian.hpp"

namespace wkc {

struct Letter {
  std::uint32_t gen = 0;
  int exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word over generator indices. Adjacent letters on the same
/// generator are merged; zero exponents vanish.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters);
  static GroupWord generator(std::uint32_t gen, int exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  /// Total number of generator occurrences (sum of |exp|).
  std::size_t length() const;

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& other) const;
  GroupWord power(int n) const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// x^-1 y^-1 x y.
GroupWord commutator(const GroupWord& x, const GroupWord& y);
/// Left-normed [x1, x2, ..., xn] = [[x1, x2], ..., xn].
GroupWord commutator(const std::vector<GroupWord>& parts);

/// A relator keeps the form it was written in so that printing reproduces
/// the input: either a plain word or a left-normed commutator of words.
struct Relator {
  std::vector<GroupWord> parts;  // one part: plain word; two or more: commutator
  GroupWord word() const;
  bool is_commutator() const { return parts.size() >= 2; }
  friend bool operator==(const Relator&, const Relator&) = default;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Relator> relators;
  std::string tag;
  std::map<std::string, std::string> params;

  std::size_t generator_count() const { return generators.size(); }
  std::vector<GroupWord> relator_words() const;
};

std::string format_word(const Presentation& p, const GroupWord& w);
std::string format_relator(const Presentation& p, const Relator& r);
/// "< a1,a2 | a1^2, [a1,a2] >"
std::string format_presentation(const Presentation& p);
Presentation parse_presentation(std::string_view text);
/// Parses a word such as "a1*b2^-1*a3" against the presentation's names.
GroupWord parse_word(const Presentation& p, std::string_view text);

// ---------------------------------------------------------------------------

struct PairSet {
  AbelianGroup a;
  AbelianGroup b;
  std::vector<std::pair<AbelianElement, AbelianElement>> pairs;
};

/// {(h, h^f) : h in A#}, in element-code order.
PairSet graph_pairs(const PointedBijection& f);
/// {(w, w^psi) : w a product of at most m elements of S, w != e}, B a copy of A.
PairSet chi_pairs(const AbelianGroup& a, const std::vector<AbelianElement>& s, int m);
/// chi_pairs with S = A#, i.e. the full graph of the natural isomorphism.
PairSet chi_full_pairs(const AbelianGroup& a);
/// The six displayed pairs of the rank-3 example over A_{p,3}.
PairSet example1_pairs(int p);

/// Word a_1^{d_1} ... a_r^{d_r} in generators offset, offset+1, ...
GroupWord element_word(const AbelianElement& x, std::uint32_t offset);

/// Generators a1..ar, b1..bs; relators: powers and commutators of A, the same
/// for B, then one commutator [word(u), word(v)] per pair.
Presentation build_pairs_presentation(const PairSet& pairs);

/// Identity-preserving map H -> X stored by element code.
using CodeTable = std::vector<std::uint64_t>;

/// <H, K | h h^f = h^a h^b> with a: H -> K and b: H -> H. Relators
/// h h^f (h^b)^-1 (h^a)^-1 for h in H#, after both abelian blocks.
Presentation build_sanov(const AbelianGroup& h, const AbelianGroup& k, const PointedBijection& f,
                         const CodeTable& a, const CodeTable& b);

/// Data for the extension f* of f through central subgroups M, N. Tables are
/// keyed by codes in H~ (for M and the transversal) and give codes in K~.
struct ExtensionSpec {
  AbelianGroup h_tilde;
  AbelianGroup k_tilde;
  std::vector<AbelianElement> m_gens;
  std::vector<AbelianElement> n_gens;
  std::vector<AbelianElement> h_transversal;  // contains the identity
  std::vector<AbelianElement> k_transversal;
  std::map<std::uint64_t, std::uint64_t> alpha;  // M -> N, fixes e
  std::map<std::uint64_t, std::uint64_t> gamma;  // M -> N, any bijection
  std::map<std::uint64_t, std::uint64_t> f;      // H -> K on transversals, fixes e
};

/// All elements of the subgroup generated by `gens`, in discovery order.
std::vector<AbelianElement> span(const AbelianGroup& a, const std::vector<AbelianElement>& gens);

/// f*: m -> m^alpha, m h -> m^gamma h^f (h != e).
PointedBijection extension_map(const ExtensionSpec& spec);

struct Extension {
  ExtensionSpec spec;
  PointedBijection f_star;
  Presentation presentation;
};

Extension build_extension(ExtensionSpec spec);

/// H~ = K~ = A_{2,k}, M = <a1>, N = <b1>, H = <a2..ak>, f natural:
/// a1 -> b1, h -> b1 h^f, a1 h -> h^f.
ExtensionSpec chi_extension_spec(int k);
/// H~ = K~ = C_4, M = N = C_2, transversal {0, 1}, gamma swapping the
/// elements of M -> N.
ExtensionSpec toy_extension_spec();

}  // namespace wkc
