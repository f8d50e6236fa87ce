#include "wkc/polymat.hpp"

#include <algorithm>

#include "json.hpp"
#include "wkc/error.hpp"

namespace wkc {

Poly::Poly(long long c) {
  if (c != 0) terms_[{0, 0, 0}] = c;
}

Poly Poly::x() {
  Poly p;
  p.terms_[{1, 0, 0}] = 1;
  return p;
}

Poly Poly::y() {
  Poly p;
  p.terms_[{0, 1, 0}] = 1;
  return p;
}

Poly Poly::w() {
  Poly p;
  p.terms_[{0, 0, 1}] = 1;
  return p;
}

void Poly::add_term(const Monomial& m, long long c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) r.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
  }
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, long long>> v(terms_.begin(), terms_.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    const int da = a.first[0] + a.first[1] + a.first[2], db = b.first[0] + b.first[1] + b.first[2];
    if (da != db) return da > db;
    return a.first > b.first;
  });
  static const char* names[] = {"x", "y", "w"};
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    long long c = v[i].second;
    if (i > 0) {
      s += c < 0 ? " - " : " + ";
      c = c < 0 ? -c : c;
    } else if (c < 0) {
      s += "-";
      c = -c;
    }
    const auto& m = v[i].first;
    const bool constant = m[0] + m[1] + m[2] == 0;
    if (c != 1 || constant) s += std::to_string(c);
    for (int k = 0; k < 3; ++k) {
      if (m[k] == 0) continue;
      s += names[k];
      if (m[k] > 1) s += "^" + std::to_string(m[k]);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix() = default;

PolyMatrix PolyMatrix::identity() {
  PolyMatrix m;
  for (int i = 0; i < kDim; ++i) m.e_[i][i] = Poly(1);
  return m;
}

PolyMatrix PolyMatrix::from_rows(const std::array<std::array<Poly, kDim>, kDim>& rows) {
  PolyMatrix m;
  m.e_ = rows;
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  PolyMatrix r;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      Poly s;
      for (int k = 0; k < kDim; ++k) {
        if (!e_[i][k].is_zero() && !o.e_[k][j].is_zero()) s = s + e_[i][k] * o.e_[k][j];
      }
      r.e_[i][j] = s;
    }
  }
  return r;
}

bool PolyMatrix::is_affine() const {
  for (int i = 0; i < 4; ++i) {
    if (!(e_[i][4] == Poly(0))) return false;
  }
  if (!(e_[4][4] == Poly(1))) return false;
  for (int i = 0; i < 4; ++i) {
    int nonzero = 0;
    for (int j = 0; j < 4; ++j) {
      if (e_[i][j].is_zero()) continue;
      if (!(e_[i][j] == Poly(1) || e_[i][j] == Poly(-1))) return false;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  for (int j = 0; j < 4; ++j) {
    int nonzero = 0;
    for (int i = 0; i < 4; ++i) nonzero += e_[i][j].is_zero() ? 0 : 1;
    if (nonzero != 1) return false;
  }
  return true;
}

std::array<Poly, 4> PolyMatrix::translation() const { return {e_[4][0], e_[4][1], e_[4][2], e_[4][3]}; }

bool PolyMatrix::is_translation() const {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (!(e_[i][j] == Poly(i == j ? 1 : 0))) return false;
    }
  }
  return e_[4][4] == Poly(1);
}

std::string PolyMatrix::to_string() const {
  std::string s;
  for (int i = 0; i < kDim; ++i) {
    s += "(";
    for (int j = 0; j < kDim; ++j) s += (j ? ", " : "") + e_[i][j].to_string();
    s += ")";
    if (i + 1 < kDim) s += "\n";
  }
  return s;
}

PolyMatrix mat_inverse(const PolyMatrix& m) {
  if (!m.is_affine()) throw Error("mat_inverse: matrix is not affine");
  // (v, 1) -> (v L + t, 1) has inverse (v, 1) -> (v L^T - t L^T, 1).
  PolyMatrix r = PolyMatrix::identity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r.at(i, j) = m.at(j, i);
  }
  for (int j = 0; j < 4; ++j) {
    Poly s;
    for (int k = 0; k < 4; ++k) s = s + m.at(4, k) * r.at(k, j);
    r.at(4, j) = -s;
  }
  return r;
}

PolyMatrix mat_op(MatOp op, const PolyMatrix& a, const PolyMatrix& b) {
  return op == MatOp::mul ? a * b : mat_inverse(a);
}

std::array<PolyMatrix, 6> build_representation() {
  const Poly x = Poly::x(), y = Poly::y(), w = Poly::w();
  const Poly o(0), p(1), n(-1);
  using Rows = std::array<std::array<Poly, 5>, 5>;
  return {
      PolyMatrix::from_rows(Rows{{{o, p, o, o, o}, {p, o, o, o, o}, {o, o, o, n, o}, {o, o, n, o, o}, {x, -x, y, y, p}}}),
      PolyMatrix::from_rows(Rows{{{o, o, p, o, o}, {o, o, o, n, o}, {p, o, o, o, o}, {o, n, o, o, o}, {x, y, -x, y, p}}}),
      PolyMatrix::from_rows(Rows{{{o, o, o, p, o}, {o, o, n, o, o}, {o, n, o, o, o}, {p, o, o, o, o}, {x, y, y, -x, p}}}),
      PolyMatrix::from_rows(Rows{{{o, n, o, o, o}, {n, o, o, o, o}, {o, o, o, n, o}, {o, o, n, o, o}, {w, w, y, y, p}}}),
      PolyMatrix::from_rows(Rows{{{o, o, n, o, o}, {o, o, o, n, o}, {n, o, o, o, o}, {o, n, o, o, o}, {w, y, w, y, p}}}),
      PolyMatrix::from_rows(Rows{{{o, o, o, n, o}, {o, o, n, o, o}, {o, n, o, o, o}, {n, o, o, o, o}, {w, y, y, w, p}}}),
  };
}

PolyMatrix evaluate(const std::array<PolyMatrix, 6>& gens, const GroupWord& word) {
  PolyMatrix r = PolyMatrix::identity();
  for (const Letter& l : word.letters()) {
    if (l.gen >= 6) throw Error("evaluate: generator out of range");
    const PolyMatrix g = l.exp > 0 ? gens[l.gen] : mat_inverse(gens[l.gen]);
    for (int i = 0; i < std::abs(l.exp); ++i) r = g * r;
  }
  return r;
}

Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly(1);
  if (n == 1) return m[0][0];
  Poly d;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const Poly term = m[0][c] * determinant(minor);
    d = c % 2 == 0 ? d + term : d - term;
  }
  return d;
}

bool RepresentationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const MatrixCheck& c) { return c.pass; });
}

std::string RepresentationReport::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass();
  j["z"] = z.to_string();
  j["rank_certificate"] = rank_certificate.to_string();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["clause"] = c.name;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(e);
  }
  return j.dump();
}

RepresentationReport verify_representation() {
  RepresentationReport rep;
  const auto g = build_representation();
  const PolyMatrix& a1 = g[0];
  const PolyMatrix& a2 = g[1];
  const PolyMatrix& a3 = g[2];
  const PolyMatrix& p1 = g[3];
  const PolyMatrix& p2 = g[4];
  const PolyMatrix& p3 = g[5];
  auto inv = [](const PolyMatrix& m) { return mat_inverse(m); };
  // Group products are evaluated right to left: the image of uv is M(v) M(u).
  auto mul = [](const PolyMatrix& u, const PolyMatrix& v) { return v * u; };
  auto comm = [&](const PolyMatrix& u, const PolyMatrix& v) { return mul(mul(mul(inv(u), inv(v)), u), v); };
  auto comm3 = [&](const PolyMatrix& u, const PolyMatrix& v, const PolyMatrix& t) { return comm(comm(u, v), t); };
  auto conj = [&](const PolyMatrix& u, const PolyMatrix& v) { return mul(mul(inv(v), u), v); };
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  bool affine = true;
  for (const auto& m : g) affine = affine && m.is_affine();
  add("generators affine with signed-permutation linear part", affine);

  // (a) relators of chi(A_{2,3}, S; 2).
  const AbelianGroup a = AbelianGroup::elementary(2, 3);
  const Presentation chi = build_pairs_presentation(chi_pairs(a, {a.generator(0), a.generator(1), a.generator(2)}, 2));
  std::size_t bad = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < chi.relators.size(); ++i) {
    if (!(evaluate(g, chi.relators[i].word()) == PolyMatrix::identity())) {
      if (bad++ == 0) first_bad = format_relator(chi, chi.relators[i]);
    }
  }
  add("relators of chi(A_{2,3},S;2) map to the identity", bad == 0,
      std::to_string(chi.relators.size()) + " relators" + (bad ? ", first failure " + first_bad : std::string()));

  // (b) xi is the translation (z, 0, 0, 0).
  const PolyMatrix xi = comm(mul(mul(p1, p2), p3), mul(mul(a1, a2), a3));
  rep.z = xi.at(4, 0);
  const Poly z_expected = Poly(4) * (-Poly::x() - Poly::y() + Poly::w());
  const auto t = xi.translation();
  add("xi -> translation (z,0,0,0), z = 4(-x-y+w)",
      xi.is_translation() && rep.z == z_expected && t[1].is_zero() && t[2].is_zero() && t[3].is_zero(),
      "z = " + rep.z.to_string());

  // (c) action table.
  const PolyMatrix xi_inv = inv(xi);
  const PolyMatrix as[3] = {a1, a2, a3};
  const PolyMatrix ps[3] = {p1, p2, p3};
  for (int i = 0; i < 3; ++i) {
    add("xi^(a" + std::to_string(i + 1) + "^psi) = xi^(-a" + std::to_string(i + 1) + ")",
        conj(xi, ps[i]) == conj(xi_inv, as[i]));
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const int k = 3 - i - j;
      const std::string si = std::to_string(i + 1), sj = std::to_string(j + 1), sk = std::to_string(k + 1);
      add("xi^(a" + si + "a" + sj + ") = xi^(-a" + sk + ") = xi^(a" + sj + "a" + si + "^psi)",
          conj(xi, mul(as[i], as[j])) == conj(xi_inv, as[k]) && conj(xi_inv, as[k]) == conj(xi, mul(as[j], ps[i])));
    }
  }

  // (d) rank certificate and commutation of the kernel generators.
  const PolyMatrix kernel[4] = {xi, conj(xi, a1), conj(xi, a2), conj(xi, a3)};
  std::vector<std::vector<Poly>> vectors;
  bool translations = true;
  for (const auto& k : kernel) {
    translations = translations && k.is_translation();
    const auto v = k.translation();
    vectors.emplace_back(v.begin(), v.end());
  }
  rep.rank_certificate = determinant(vectors);
  add("xi, xi^a1, xi^a2, xi^a3 are translations with non-zero determinant",
      translations && !rep.rank_certificate.is_zero(), "det = " + rep.rank_certificate.to_string());
  bool commute = true;
  for (const auto& u : kernel) {
    for (const auto& v : kernel) commute = commute && u * v == v * u;
  }
  add("kernel generators commute", commute);

  // (e) commutator table.
  struct Row {
    std::string text;
    PolyMatrix lhs, rhs;
  };
  const std::vector<Row> table = {
      {"[a3^psi,a2,a1]^(a2^psi) = [a2^psi,a1,a3]^-1", conj(comm3(p3, a2, a1), p2), inv(comm3(p2, a1, a3))},
      {"[a3^psi,a2,a1]^(a3^psi) = [a1^psi,a3,a2]^-1", conj(comm3(p3, a2, a1), p3), inv(comm3(p1, a3, a2))},
      {"[a3,a2^psi,a1^psi]^a2 = [a2,a1^psi,a3^psi]^-1", conj(comm3(a3, p2, p1), a2), inv(comm3(a2, p1, p3))},
      {"[a3,a2^psi,a1^psi]^a3 = [a1,a3^psi,a2^psi]^-1", conj(comm3(a3, p2, p1), a3), inv(comm3(a1, p3, p2))},
      {"[a3^psi,a2,a1^psi]^a2 = [a2^psi,a1,a3^psi]^-1", conj(comm3(p3, a2, p1), a2), inv(comm3(p2, a1, p3))},
      {"[a3^psi,a2,a1^psi]^a3 = [a1^psi,a3,a2^psi]^-1", conj(comm3(p3, a2, p1), a3), inv(comm3(p1, a3, p2))},
      {"[a1^psi,a2,a3^psi]^a1 = [a3^psi,a1,a2^psi]^-1", conj(comm3(p1, a2, p3), a1), inv(comm3(p3, a1, p2))},
      {"[a1^psi,a3,a2^psi]^a1 = [a2^psi,a1,a3^psi]^-1", conj(comm3(p1, a3, p2), a1), inv(comm3(p2, a1, p3))},
      {"[a2^psi,a1,a3^psi]^a2 = [a3^psi,a2,a1^psi]^-1", conj(comm3(p2, a1, p3), a2), inv(comm3(p3, a2, p1))},
      {"xi = [a2^psi,[a3^psi,a1]][a3^psi,a1,a2]", xi, mul(comm(p2, comm(p3, a1)), comm3(p3, a1, a2))},
      {"xi = [a2^psi,[a1^psi,a3]][a1^psi,a3,a2]", xi, mul(comm(p2, comm(p1, a3)), comm3(p1, a3, a2))},
      {"xi = [a3^psi,[a2^psi,a1]][a2^psi,a1,a3]", xi, mul(comm(p3, comm(p2, a1)), comm3(p2, a1, a3))},
      {"xi = [a1^psi,[a3^psi,a2]][a3^psi,a2,a1]", xi, mul(comm(p1, comm(p3, a2)), comm3(p3, a2, a1))},
      {"xi = [a1^psi,[a2^psi,a3]][a2^psi,a3,a1]", xi, mul(comm(p1, comm(p2, a3)), comm3(p2, a3, a1))},
  };
  for (const auto& row : table) add(row.text, row.lhs == row.rhs);
  return rep;
}

}  // namespace wkc
