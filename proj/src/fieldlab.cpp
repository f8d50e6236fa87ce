#include "wkc/fieldlab.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "wkc/error.hpp"

namespace wkc {

namespace {

using Elem = FiniteField::Elem;

// Monic moduli, low degree first.
std::vector<int> modulus_for(int p, int k) {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},        // x^2 + x + 1
      {{2, 3}, {1, 1, 0, 1}},     // x^3 + x + 1
      {{2, 4}, {1, 1, 0, 0, 1}},  // x^4 + x + 1
      {{2, 5}, {1, 0, 1, 0, 0, 1}},  // x^5 + x^2 + 1
      {{3, 2}, {1, 0, 1}},        // x^2 + 1
      {{3, 3}, {1, 2, 0, 1}},     // x^3 + 2x + 1
      {{5, 2}, {2, 0, 1}},        // x^2 + 2
  };
  if (k == 1) return {0, 1};
  auto it = table.find({p, k});
  if (it == table.end()) throw Error("no modulus for GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
  return it->second;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long long mod(long long a, long long p) { return ((a % p) + p) % p; }

long long mod_pow(long long b, long long e, long long p) {
  long long r = 1;
  b = mod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

long long mod_inv(long long a, long long p) { return mod(a, p) == 0 ? 0 : mod_pow(a, p - 2, p); }

}  // namespace

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p) || k < 1) throw Error("FiniteField: need p prime and k >= 1");
  modulus_ = modulus_for(p, k);
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= static_cast<std::uint32_t>(p);
  if (q_ > 128) throw CapacityError("FiniteField: fields above 128 elements are not supported");
  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (Elem x = 0; x < q_; ++x) {
    const auto cx = coefficients(x);
    std::vector<int> n(k);
    for (int i = 0; i < k; ++i) n[i] = (p - cx[i]) % p;
    neg_[x] = from_coefficients(n);
    for (Elem y = 0; y < q_; ++y) {
      const auto cy = coefficients(y);
      std::vector<int> s(k);
      for (int i = 0; i < k; ++i) s[i] = (cx[i] + cy[i]) % p;
      add_[x * q_ + y] = from_coefficients(s);
      // Schoolbook product, then reduce by the monic modulus.
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % p;
      }
      for (int d = 2 * k - 2; d >= k; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) prod[d - k + i] = mod(prod[d - k + i] - c * modulus_[i], p);
      }
      prod.resize(k);
      mul_[x * q_ + y] = from_coefficients(prod);
    }
  }
  for (Elem x = 1; x < q_; ++x) {
    for (Elem y = 1; y < q_; ++y) {
      if (mul(x, y) == 1) inv_[x] = y;
    }
    if (inv_[x] == 0) throw Error("FiniteField: modulus is reducible");
  }
}

FiniteField FiniteField::of_order(int q) {
  for (int p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p != 0) continue;
    int k = 0;
    int r = q;
    while (r % p == 0) {
      r /= p;
      ++k;
    }
    if (r != 1) break;
    return FiniteField(p, k);
  }
  throw Error("no field of order " + std::to_string(q));
}

Elem FiniteField::pow(Elem x, long long e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Elem FiniteField::from_int(long long n) const { return static_cast<Elem>(mod(n, p_)); }

Elem FiniteField::root() const {
  if (k_ > 1) return static_cast<Elem>(p_);  // coefficient vector (0, 1, 0, ...)
  for (Elem x = 1; x < q_; ++x) {
    if (multiplicative_order(x) == q_ - 1) return x;
  }
  return 1;
}

std::uint64_t FiniteField::multiplicative_order(Elem x) const {
  if (x == 0) return 0;
  std::uint64_t n = 1;
  for (Elem y = x; y != 1; y = mul(y, x)) ++n;
  return n;
}

std::vector<int> FiniteField::coefficients(Elem x) const {
  std::vector<int> c(k_);
  for (int i = 0; i < k_; ++i) {
    c[i] = static_cast<int>(x % p_);
    x /= p_;
  }
  return c;
}

Elem FiniteField::from_coefficients(const std::vector<int>& c) const {
  Elem x = 0;
  for (int i = k_; i-- > 0;) x = x * p_ + static_cast<Elem>(mod(c[i], p_));
  return x;
}

std::string FiniteField::format(Elem x) const {
  std::string s = "[";
  const auto c = coefficients(x);
  for (int i = 0; i < k_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

FieldOp parse_field_op(std::string_view text) {
  if (text == "add") return FieldOp::add;
  if (text == "mul") return FieldOp::mul;
  if (text == "inv") return FieldOp::inv;
  if (text == "pow") return FieldOp::pow;
  throw Error("unknown field operation \"" + std::string(text) + "\"");
}

Elem field_op(const FiniteField& f, FieldOp op, Elem x, long long y) {
  if (x >= f.order()) throw Error("field_op: operand outside the field");
  switch (op) {
    case FieldOp::add:
      return f.add(x, static_cast<Elem>(y));
    case FieldOp::mul:
      return f.mul(x, static_cast<Elem>(y));
    case FieldOp::inv:
      return f.inv(x);
    case FieldOp::pow:
      return f.pow(x, y);
  }
  return 0;
}

AbelianGroup additive_group(const FiniteField& f) {
  return AbelianGroup::elementary(f.characteristic(), f.degree());
}

AbelianElement to_abelian(const FiniteField& f, Elem x) { return AbelianElement{f.coefficients(x)}; }

Elem from_abelian(const FiniteField& f, const AbelianElement& x) { return f.from_coefficients(x.digits); }

PointedBijection field_inverse_bijection(const FiniteField& f) {
  const AbelianGroup a = additive_group(f);
  std::vector<std::uint64_t> table(a.order());
  for (Elem x = 0; x < f.order(); ++x) table[a.code(to_abelian(f, x))] = a.code(to_abelian(f, f.inv(x)));
  return PointedBijection(a, a, std::move(table));
}

Presentation field_inverse_presentation(const FiniteField& f) {
  Presentation p = build_pairs_presentation(graph_pairs(field_inverse_bijection(f)));
  p.tag = "fieldinv";
  return p;
}

// ---------------------------------------------------------------------------

CodePair apply_alpha(const PointedBijection& f, CodePair x) {
  const AbelianGroup& k = f.codomain();
  return {x.first, k.code(combine(k, f(f.domain().element(x.first)), k.element(x.second)))};
}

CodePair apply_beta(const PointedBijection& f, CodePair x) {
  const AbelianGroup& h = f.domain();
  return {h.code(combine(h, f.preimage(f.codomain().element(x.second)), h.element(x.first))), x.second};
}

OrbitRecord alphabeta_orbit(const PointedBijection& f, CodePair start) {
  OrbitRecord r;
  r.start = start;
  std::set<CodePair> seen{start};
  r.elements.push_back(start);
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    for (CodePair y : {apply_alpha(f, r.elements[i]), apply_beta(f, r.elements[i])}) {
      if (seen.insert(y).second) r.elements.push_back(y);
    }
  }
  return r;
}

std::vector<OrbitRecord> orbit_partition(const PointedBijection& f) {
  const std::uint64_t nh = f.domain().order(), nk = f.codomain().order();
  std::vector<std::uint8_t> done(nh * nk, 0);
  std::vector<OrbitRecord> out;
  for (std::uint64_t h = 0; h < nh; ++h) {
    for (std::uint64_t k = 0; k < nk; ++k) {
      if (done[h * nk + k]) continue;
      out.push_back(alphabeta_orbit(f, {h, k}));
      for (auto [x, y] : out.back().elements) done[x * nk + y] = 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  cpp_int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

cpp_rational rinv(const cpp_rational& x) { return x == 0 ? cpp_rational(0) : cpp_rational(1) / x; }

using RPair = std::pair<cpp_rational, cpp_rational>;

RPair ralpha(const RPair& x) { return {x.first, rinv(x.first) + x.second}; }
RPair rbeta(const RPair& x) { return {rinv(x.second) + x.first, x.second}; }

std::string rstr(const cpp_rational& x) { return x.str(); }

}  // namespace

CheckResult check_lemma11_rational(int i) {
  if (i < 1) throw Error("check_lemma11_rational: i >= 1");
  CheckResult r;
  r.pass = true;
  const cpp_int c1 = factorial(i - 1) * (cpp_int(1) << (i - 1));
  const cpp_rational first_coeff(factorial(2 * i - 1), c1 * c1);
  const cpp_rational second_coeff((cpp_int(1) << (2 * i - 2)) * factorial(i - 1) * factorial(i - 1),
                                  factorial(2 * i - 2));
  const cpp_rational third_coeff(cpp_int(2 * i) * c1 * c1, factorial(2 * i - 1));
  for (int b = 1; b <= 2; ++b) {
    RPair x{0, cpp_rational(b)};
    for (int s = 0; s < i; ++s) x = rbeta(ralpha(x));
    const RPair y = ralpha(x);
    const cpp_rational a_exp = first_coeff / b;
    if (x.first != a_exp || x.second != second_coeff * b || y.first != a_exp || y.second != third_coeff * b) {
      r.pass = false;
      r.detail = "b=" + std::to_string(b) + ": got (" + rstr(x.first) + "," + rstr(x.second) + "), expected (" +
                 rstr(a_exp) + "," + rstr(second_coeff * b) + ")";
      return r;
    }
  }
  r.detail = "(alpha beta)^" + std::to_string(i) + "(0,b) = (" + rstr(first_coeff) + "/b, " + rstr(second_coeff) + "b)";
  return r;
}

CheckResult check_lemma11_modp(int p, int i, long long b) {
  CheckResult r;
  if (!is_prime(p) || p == 2) throw Error("check_lemma11_modp: p must be an odd prime");
  if (mod(b, p) == 0) throw Error("check_lemma11_modp: b must be non-zero");
  if (2 * i - 1 >= p) {
    r.skipped = true;
    r.pass = true;
    r.detail = "(2i-1)! vanishes mod p";
    return r;
  }
  auto fact = [&](int n) {
    long long v = 1;
    for (int t = 2; t <= n; ++t) v = v * t % p;
    return v;
  };
  const long long c1 = fact(i - 1) * mod_pow(2, i - 1, p) % p;
  const long long first = fact(2 * i - 1) * mod_inv(c1 * c1 % p, p) % p;
  const long long second = mod_pow(2, 2 * i - 2, p) * fact(i - 1) % p * fact(i - 1) % p * mod_inv(fact(2 * i - 2), p) % p;
  const long long third = 2LL * i % p * c1 % p * c1 % p * mod_inv(fact(2 * i - 1), p) % p;
  auto inv = [&](long long x) { return mod_inv(x, p); };
  long long x = 0, y = mod(b, p);
  for (int s = 0; s < i; ++s) {
    y = mod(inv(x) + y, p);
    x = mod(inv(y) + x, p);
  }
  const long long ya = mod(inv(x) + y, p);
  const long long a_exp = first * inv(b) % p;
  r.pass = x == a_exp && y == second * mod(b, p) % p && ya == third * mod(b, p) % p;
  r.detail = "(" + std::to_string(x) + "," + std::to_string(y) + ") expected (" + std::to_string(a_exp) + "," +
             std::to_string(second * mod(b, p) % p) + ")";
  return r;
}

std::pair<long long, long long> lemma11_wilson_value(int p, long long b) {
  auto fact = [&](int n) {
    long long v = 1;
    for (int t = 2; t <= n; ++t) v = v * t % p;
    return v;
  };
  const long long coeff = mod_pow(2, p - 2, p) * fact((p - 1) / 2) % p * fact((p - 3) / 2) % p * mod_inv(fact(p - 2), p) % p;
  return {0, coeff * mod(b, p) % p};
}

CheckResult check_lemma11_wilson(int p, long long b) {
  if (!is_prime(p) || p == 2) throw Error("check_lemma11_wilson: p must be an odd prime");
  CheckResult r;
  long long x = 0, y = mod(b, p);
  for (int s = 0; s < (p + 1) / 2; ++s) {
    y = mod(mod_inv(x, p) + y, p);
    x = mod(mod_inv(y, p) + x, p);
  }
  const long long expected = ((p - 1) / 2) % 2 == 0 ? mod(b, p) : mod(-b, p);
  const auto formula = lemma11_wilson_value(p, b);
  r.pass = x == 0 && y == expected && formula.second == expected;
  r.detail = "(0," + std::to_string(mod(b, p)) + ") -> (" + std::to_string(x) + "," + std::to_string(y) + ")";
  return r;
}

bool in_lemma12_domain(const FiniteField& f, Elem a, Elem b) {
  return a != 0 && b != 0 && !f.in_prime_field(f.mul(a, b));
}

CheckResult check_lemma12(const FiniteField& f, int i, int j, std::size_t samples) {
  using P = std::pair<Elem, Elem>;
  auto alpha = [&](P x, long long n) { return P{x.first, f.add(f.mul(f.from_int(n), f.inv(x.first)), x.second)}; };
  auto beta = [&](P x, long long n) { return P{f.add(x.first, f.mul(f.from_int(n), f.inv(x.second))), x.second}; };
  // [alpha^s, beta^t] = alpha^-s beta^-t alpha^s beta^t, applied left to right.
  auto comm = [&](P x, long long s, long long t) { return beta(alpha(beta(alpha(x, -s), -t), s), t); };
  auto word = [&](P x) {
    x = alpha(x, i);
    x = beta(x, -i - j);
    x = alpha(x, j);
    x = beta(x, i);
    x = alpha(x, -i - j);
    return beta(x, j);
  };
  std::vector<P> starts;
  for (Elem a = 0; a < f.order(); ++a) {
    for (Elem b = 0; b < f.order(); ++b) {
      if (in_lemma12_domain(f, a, b)) starts.emplace_back(a, b);
    }
  }
  if (samples > 0 && !starts.empty()) {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, starts.size() - 1);
    std::vector<P> chosen;
    for (std::size_t s = 0; s < samples; ++s) chosen.push_back(starts[pick(rng)]);
    starts = std::move(chosen);
  }
  CheckResult r;
  r.pass = true;
  for (P x : starts) {
    if (comm(x, i, j) != comm(x, j, i) || word(x) != x) {
      r.pass = false;
      r.detail = "fails at (" + f.format(x.first) + "," + f.format(x.second) + ")";
      return r;
    }
  }
  r.detail = std::to_string(starts.size()) + " starts checked";
  return r;
}

std::string Char2Report::to_json() const {
  nlohmann::ordered_json j;
  j["involutions"] = involutions;
  j["closed_form"] = closed_form;
  j["hypothesis_prime"] = hypothesis_prime;
  j["generator_property"] = generator_property;
  j["pairs_checked"] = pairs_checked;
  j["generator_failures"] = generator_failures;
  return j.dump();
}

Char2Report check_char2(const FiniteField& f) {
  if (f.characteristic() != 2) throw Error("check_char2: characteristic 2 required");
  using P = std::pair<Elem, Elem>;
  auto alpha = [&](P x) { return P{x.first, f.add(f.inv(x.first), x.second)}; };
  auto beta = [&](P x) { return P{f.add(f.inv(x.second), x.first), x.second}; };
  Char2Report r;
  r.involutions = true;
  r.closed_form = true;
  r.generator_property = true;
  r.hypothesis_prime = is_prime(f.order() - 1);
  for (Elem a = 0; a < f.order(); ++a) {
    for (Elem b = 0; b < f.order(); ++b) {
      const P x{a, b};
      r.involutions = r.involutions && alpha(alpha(x)) == x && beta(beta(x)) == x;
      const Elem ab = f.mul(a, b);
      if (a == 0 || b == 0 || ab == 1) continue;
      ++r.pairs_checked;
      const Elem c = f.div(ab, f.add(1, ab));
      P y = x;
      for (long long k = 0; k <= static_cast<long long>(f.order()); ++k) {
        const P expect{f.mul(f.pow(c, k), a), f.mul(f.pow(c, -k), b)};
        const P expect_beta{f.mul(f.pow(c, k - 1), a), f.mul(f.pow(c, -k), b)};
        if (y != expect || beta(y) != expect_beta) r.closed_form = false;
        y = beta(alpha(y));
      }
      // c generates F^# and the (1 + c^i) a, i != 0 mod o(c), span F.
      const std::uint64_t oc = f.multiplicative_order(c);
      bool ok = oc == f.order() - 1;
      std::vector<std::uint8_t> span(f.order(), 0);
      span[0] = 1;
      for (std::uint64_t i = 1; i < oc; ++i) {
        const Elem v = f.mul(f.add(1, f.pow(c, static_cast<long long>(i))), a);
        if (span[v]) continue;
        std::vector<Elem> old;
        for (Elem z = 0; z < f.order(); ++z) {
          if (span[z]) old.push_back(z);
        }
        for (Elem z : old) span[f.add(z, v)] = 1;
      }
      ok = ok && std::all_of(span.begin(), span.end(), [](std::uint8_t s) { return s != 0; });
      if (!ok) ++r.generator_failures;
    }
  }
  r.generator_property = r.generator_failures == 0;
  return r;
}

AntiAdditive anti_additive_check(const FiniteField& f) {
  AntiAdditive r;
  for (Elem x = 1; x < f.order(); ++x) {
    for (Elem y = 1; y < f.order(); ++y) {
      const Elem s = f.add(x, y);
      if (s == 0) continue;
      if (f.inv(s) == f.add(f.inv(x), f.inv(y))) {
        r.counterexample = std::pair{x, y};
        return r;
      }
    }
  }
  r.pass = true;
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(OrbitType t) {
  switch (t) {
    case OrbitType::type_i:
      return "i";
    case OrbitType::type_ii:
      return "ii";
    case OrbitType::type_iii:
      return "iii";
    case OrbitType::degenerate:
      return "degenerate";
    case OrbitType::unmatched:
      return "unmatched";
  }
  return "";
}

std::string OrbitCensus::to_json() const {
  nlohmann::ordered_json j;
  j["total_pairs"] = total_pairs;
  j["orbits"] = orbits;
  j["type_i"] = type_i;
  j["type_ii"] = type_ii;
  j["type_iii"] = type_iii;
  j["degenerate"] = degenerate;
  j["unmatched"] = unmatched;
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t l : lengths) ++hist[l];
  j["length_histogram"] = nlohmann::json::object();
  for (auto [l, n] : hist) j["length_histogram"][std::to_string(l)] = n;
  return j.dump();
}

OrbitCensus classify_extension_orbits(int k) {
  if (k < 3) throw Error("classify_extension_orbits: k >= 3");
  const Extension ext = build_extension(chi_extension_spec(k));
  const PointedBijection& f = ext.f_star;
  const AbelianGroup& ha = f.domain();
  const AbelianGroup& kb = f.codomain();
  // t: a_i -> b_i has the same digits on both sides.
  auto t = [&](const AbelianElement& x) { return kb.code(x); };
  auto h = [&](const AbelianElement& x) { return ha.code(x); };
  const AbelianElement a1 = ha.generator(0);
  const AbelianElement b1 = kb.generator(0);
  std::vector<AbelianElement> sub_a;  // A = <a_2, ..., a_k>
  for (std::uint64_t c = 0; c < ha.order(); ++c) {
    AbelianElement x = ha.element(c);
    if (x.digits[0] == 0) sub_a.push_back(x);
  }
  auto plus = [&](const AbelianElement& x, const AbelianElement& y) { return combine(ha, x, y); };
  // Template sets keyed by their sorted contents.
  std::map<std::set<CodePair>, OrbitType> templates;
  auto add_template = [&](std::set<CodePair> s, OrbitType type, bool degenerate) {
    templates.emplace(std::move(s), degenerate ? OrbitType::degenerate : type);
  };
  const AbelianElement e = ha.identity();
  for (const auto& u : sub_a) {
    const bool deg = u == e;
    add_template({{h(a1), t(u)},
                  {h(u), t(u)},
                  {h(u), t(b1)},
                  {h(plus(a1, u)), t(b1)},
                  {h(plus(a1, u)), t(plus(b1, u))},
                  {h(a1), t(plus(b1, u))}},
                 OrbitType::type_i, deg);
    for (const auto& w : sub_a) {
      if (u == w) continue;
      const bool dg = u == e || w == e;
      const AbelianElement uw = plus(u, w);
      add_template({{h(u), t(w)},
                    {h(plus(a1, uw)), t(w)},
                    {h(plus(a1, uw)), t(u)},
                    {h(w), t(u)},
                    {h(w), t(plus(b1, uw))},
                    {h(u), t(plus(b1, uw))}},
                   OrbitType::type_ii, dg);
      add_template({{h(plus(a1, u)), t(plus(b1, w))},
                    {h(plus(a1, uw)), t(plus(b1, w))},
                    {h(plus(a1, uw)), t(plus(b1, u))},
                    {h(plus(a1, w)), t(plus(b1, u))},
                    {h(plus(a1, w)), t(plus(b1, uw))},
                    {h(plus(a1, u)), t(plus(b1, uw))}},
                   OrbitType::type_iii, dg);
    }
  }
  OrbitCensus census;
  census.total_pairs = ha.order() * kb.order();
  for (const auto& orbit : orbit_partition(f)) {
    std::set<CodePair> s(orbit.elements.begin(), orbit.elements.end());
    auto it = templates.find(s);
    OrbitType type = it == templates.end() ? OrbitType::unmatched : it->second;
    // Orbits through a pair with an identity coordinate carry the trivial
    // commutator; the templates assume u, w != e.
    const bool trivial = std::any_of(s.begin(), s.end(), [](const CodePair& x) { return x.first == 0 || x.second == 0; });
    if (trivial) type = OrbitType::degenerate;
    ++census.orbits;
    census.lengths.push_back(orbit.length());
    census.types.push_back(type);
    switch (type) {
      case OrbitType::type_i:
        ++census.type_i;
        break;
      case OrbitType::type_ii:
        ++census.type_ii;
        break;
      case OrbitType::type_iii:
        ++census.type_iii;
        break;
      case OrbitType::degenerate:
        ++census.degenerate;
        break;
      case OrbitType::unmatched:
        ++census.unmatched;
        break;
    }
  }
  return census;
}

}  // namespace wkc
