#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wkc/abelian.hpp"
#include "wkc/presentation.hpp"

namespace wkc {

/// GF(p^k) with a fixed modulus. Elements are integers 0..q-1 encoding the
/// coefficient vector little-endian in base p (index = sum c_i p^i).
class FiniteField {
 public:
  using Elem = std::uint32_t;

  /// Uses the built-in modulus table; k = 1 gives the prime field.
  FiniteField(int p, int k);
  static FiniteField of_order(int q);

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  /// Modulus coefficients, low degree first, monic.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem x, Elem y) const { return add_[x * q_ + y]; }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem neg(Elem x) const { return neg_[x]; }
  Elem mul(Elem x, Elem y) const { return mul_[x * q_ + y]; }
  /// Multiplicative inverse with inv(0) = 0.
  Elem inv(Elem x) const { return inv_[x]; }
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, long long e) const;
  /// The image of the integer n in the prime field.
  Elem from_int(long long n) const;
  /// The root g of the modulus (x itself); for k = 1 the integer 1 is not a
  /// root, so this returns a primitive element instead.
  Elem root() const;
  std::uint64_t multiplicative_order(Elem x) const;
  bool in_prime_field(Elem x) const { return x < static_cast<Elem>(p_); }

  std::vector<int> coefficients(Elem x) const;
  Elem from_coefficients(const std::vector<int>& c) const;
  /// Little-endian coefficient vector, e.g. "[1,0,1]".
  std::string format(Elem x) const;

 private:
  int p_ = 2;
  int k_ = 1;
  std::uint32_t q_ = 2;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

enum class FieldOp { add, mul, inv, pow };
FieldOp parse_field_op(std::string_view text);
FiniteField::Elem field_op(const FiniteField& f, FieldOp op, FiniteField::Elem x, long long y = 0);

/// Additive group of F as A_{p,k}: field coefficient c_i is digit i.
AbelianGroup additive_group(const FiniteField& f);
AbelianElement to_abelian(const FiniteField& f, FiniteField::Elem x);
FiniteField::Elem from_abelian(const FiniteField& f, const AbelianElement& x);
/// The pointed bijection 0 -> 0, x -> x^-1 of F.
PointedBijection field_inverse_bijection(const FiniteField& f);
/// G(F; inv) = < F, F' | [a, (a^-1)'] for a != 0 >.
Presentation field_inverse_presentation(const FiniteField& f);

// ---------------------------------------------------------------------------

/// (h, k) as element codes of H and K.
using CodePair = std::pair<std::uint64_t, std::uint64_t>;

struct OrbitRecord {
  CodePair start;
  std::vector<CodePair> elements;  // breadth-first from start
  std::size_t length() const { return elements.size(); }
};

/// alpha: (h, k) -> (h, h^f k), beta: (h, k) -> (k^(f^-1) h, k).
CodePair apply_alpha(const PointedBijection& f, CodePair x);
CodePair apply_beta(const PointedBijection& f, CodePair x);
OrbitRecord alphabeta_orbit(const PointedBijection& f, CodePair start);
/// All orbits on H x K, ordered by their least pair.
std::vector<OrbitRecord> orbit_partition(const PointedBijection& f);

// ---------------------------------------------------------------------------

struct CheckResult {
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

/// (alpha beta)^i and (alpha beta)^i alpha on (0, b) over the rationals,
/// against the closed forms, at b = 1 and b = 2.
CheckResult check_lemma11_rational(int i);
/// The same closed forms over GF(p); skipped when (2i-1)! vanishes mod p.
CheckResult check_lemma11_modp(int p, int i, long long b);
/// (alpha beta)^((p+1)/2) (0, b) = (0, (-1)^((p-1)/2) b) over GF(p).
CheckResult check_lemma11_wilson(int p, long long b);
/// The closed-form value of (alpha beta)^((p+1)/2) (0, b) without iterating.
std::pair<long long, long long> lemma11_wilson_value(int p, long long b);

/// T = {(a, b) : a != 0 != b, ab not in the prime field}.
bool in_lemma12_domain(const FiniteField& f, FiniteField::Elem a, FiniteField::Elem b);
/// [alpha^i, beta^j] = [alpha^j, beta^i] and the six-letter relation word,
/// for the field-inverse maps. `samples` = 0 means every pair of T,
/// otherwise that many pairs drawn with seed 0.
CheckResult check_lemma12(const FiniteField& f, int i, int j, std::size_t samples = 0);

struct Char2Report {
  bool involutions = false;       // alpha^2 = beta^2 = e on all of F x F
  bool closed_form = false;       // (alpha beta)^k and (alpha beta)^k beta formulas
  bool hypothesis_prime = false;  // q - 1 prime
  bool generator_property = false;
  std::size_t pairs_checked = 0;
  std::size_t generator_failures = 0;
  std::string to_json() const;
};

/// Lemma 13 and the generator hypothesis used for the class-2 theorem:
/// c = ab/(1+ab) generates F^# and the (1 + c^i) a span F.
Char2Report check_char2(const FiniteField& f);

struct AntiAdditive {
  bool pass = false;
  std::optional<std::pair<FiniteField::Elem, FiniteField::Elem>> counterexample;
};

/// (x+y)^-1 != x^-1 + y^-1 whenever x, y, x+y are all non-zero.
AntiAdditive anti_additive_check(const FiniteField& f);

// ---------------------------------------------------------------------------

enum class OrbitType { type_i, type_ii, type_iii, degenerate, unmatched };
std::string to_string(OrbitType t);

struct OrbitCensus {
  std::size_t total_pairs = 0;
  std::size_t orbits = 0;
  std::size_t type_i = 0;
  std::size_t type_ii = 0;
  std::size_t type_iii = 0;
  std::size_t degenerate = 0;
  std::size_t unmatched = 0;
  std::vector<std::size_t> lengths;  // per orbit, in partition order
  std::vector<OrbitType> types;
  std::string to_json() const;
};

/// Orbits of <alpha, beta> on A~ x B~ for the extension f* of chi(A_{2,k-1})
/// matched against the three six-pair templates.
OrbitCensus classify_extension_orbits(int k);

}  // namespace wkc
