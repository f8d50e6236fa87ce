#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wkc/presentation.hpp"

namespace wkc {

/// Integer polynomial in x, y, w; monomials keyed by exponent triples.
class Poly {
 public:
  using Monomial = std::array<int, 3>;

  Poly() = default;
  Poly(long long c);
  static Poly x();
  static Poly y();
  static Poly w();

  const std::map<Monomial, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Terms in descending degree-lex order, e.g. "-4x - 4y + 4w".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, long long c);
  std::map<Monomial, long long> terms_;
};

/// 5x5 matrix over Z[x,y,w] acting on row vectors.
class PolyMatrix {
 public:
  static constexpr int kDim = 5;

  PolyMatrix();
  static PolyMatrix identity();
  static PolyMatrix from_rows(const std::array<std::array<Poly, kDim>, kDim>& rows);

  const Poly& at(int r, int c) const { return e_[r][c]; }
  Poly& at(int r, int c) { return e_[r][c]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

  /// Last column (0,0,0,0,1)^T and a signed permutation in the top-left 4x4.
  bool is_affine() const;
  /// Translation part: the first four entries of the last row.
  std::array<Poly, 4> translation() const;
  bool is_translation() const;

  std::string to_string() const;

 private:
  std::array<std::array<Poly, kDim>, kDim> e_;
};

enum class MatOp { mul, inv };
/// inv requires an affine matrix and throws otherwise.
PolyMatrix mat_inverse(const PolyMatrix& m);
PolyMatrix mat_op(MatOp op, const PolyMatrix& a, const PolyMatrix& b = PolyMatrix::identity());

/// Images of a1, a2, a3, a1^psi, a2^psi, a3^psi, in that order.
std::array<PolyMatrix, 6> build_representation();

/// Image of a word over the generators a1, a2, a3, b1, b2, b3 (b_i = a_i^psi).
/// Words are read right to left: the image of uv is M(v) M(u).
PolyMatrix evaluate(const std::array<PolyMatrix, 6>& gens, const GroupWord& w);

/// Determinant of a square matrix of polynomials by cofactor expansion.
Poly determinant(const std::vector<std::vector<Poly>>& m);

struct MatrixCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RepresentationReport {
  std::vector<MatrixCheck> checks;
  Poly z;                 // first entry of the image of xi
  Poly rank_certificate;  // determinant of the four translation vectors
  bool pass() const;
  std::string to_json() const;
};

/// Relators of chi(A_{2,3}, S; 2), the image of xi, the action and
/// commutator tables, and the rank-4 determinant.
RepresentationReport verify_representation();

}  // namespace wkc
