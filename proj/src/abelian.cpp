#include "wkc/abelian.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace wkc {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int mod(long long a, int n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

int inverse_mod(int a, int p) {
  for (int x = 1; x < p; ++x) {
    if ((a * x) % p == 1) return x;
  }
  throw Error("inverse_mod: not invertible");
}

void require_elementary(const AbelianGroup& a, const char* what) {
  if (a.elementary_prime() == 0) {
    throw Error(std::string(what) + ": group " + a.name() + " is not elementary abelian");
  }
}

}  // namespace

AbelianGroup::AbelianGroup(std::vector<int> cyclic_orders) : orders_(std::move(cyclic_orders)) {
  for (int n : orders_) {
    if (n < 2) throw Error("cyclic factor orders must be >= 2");
    if (order_ > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(n)) {
      throw CapacityError("abelian group too large");
    }
    order_ *= static_cast<std::uint64_t>(n);
  }
}

AbelianGroup AbelianGroup::elementary(int p, int k) {
  if (!is_prime(p)) throw Error("A_{p,k} needs p prime, got " + std::to_string(p));
  if (k < 1) throw Error("A_{p,k} needs k >= 1");
  return AbelianGroup(std::vector<int>(static_cast<std::size_t>(k), p));
}

bool AbelianGroup::homogeneous() const {
  return std::adjacent_find(orders_.begin(), orders_.end(), std::not_equal_to<>()) == orders_.end();
}

int AbelianGroup::elementary_prime() const {
  if (orders_.empty() || !homogeneous() || !is_prime(orders_.front())) return 0;
  return orders_.front();
}

AbelianElement AbelianGroup::identity() const { return {std::vector<int>(orders_.size(), 0)}; }

AbelianElement AbelianGroup::generator(std::size_t i) const {
  AbelianElement x = identity();
  x.digits.at(i) = 1;
  return x;
}

bool AbelianGroup::is_identity(const AbelianElement& x) const {
  return std::all_of(x.digits.begin(), x.digits.end(), [](int d) { return d == 0; });
}

bool AbelianGroup::contains(const AbelianElement& x) const {
  if (x.digits.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (x.digits[i] < 0 || x.digits[i] >= orders_[i]) return false;
  }
  return true;
}

std::uint64_t AbelianGroup::code(const AbelianElement& x) const {
  if (!contains(x)) throw Error("element " + format_element(x) + " not in " + name());
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    c = c * static_cast<std::uint64_t>(orders_[i]) + static_cast<std::uint64_t>(x.digits[i]);
  }
  return c;
}

AbelianElement AbelianGroup::element(std::uint64_t code) const {
  if (code >= order_) throw Error("element code out of range");
  AbelianElement x = identity();
  for (std::size_t i = orders_.size(); i-- > 0;) {
    x.digits[i] = static_cast<int>(code % static_cast<std::uint64_t>(orders_[i]));
    code /= static_cast<std::uint64_t>(orders_[i]);
  }
  return x;
}

AbelianElement AbelianGroup::negate(const AbelianElement& x) const {
  AbelianElement r = x;
  for (std::size_t i = 0; i < orders_.size(); ++i) r.digits[i] = mod(-x.digits[i], orders_[i]);
  return r;
}

std::uint64_t AbelianGroup::element_order(const AbelianElement& x) const {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    int n = orders_[i];
    std::uint64_t o = static_cast<std::uint64_t>(n / std::gcd(n, x.digits[i]));
    result = std::lcm(result, o);
  }
  return result;
}

std::string AbelianGroup::name() const {
  if (int p = elementary_prime(); p != 0) {
    return "A_{" + std::to_string(p) + "," + std::to_string(orders_.size()) + "}";
  }
  std::string s;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) s += "x";
    s += "C" + std::to_string(orders_[i]);
  }
  return s.empty() ? "1" : s;
}

AbelianElement combine(const AbelianGroup& a, const AbelianElement& x, const AbelianElement& y,
                       long long scalar) {
  if (!a.contains(x) || !a.contains(y)) throw Error("combine: element not in " + a.name());
  AbelianElement r = x;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    r.digits[i] = mod(x.digits[i] + scalar * y.digits[i], a.cyclic_orders()[i]);
  }
  return r;
}

std::string format_element(const AbelianElement& x, char letter) {
  std::string s;
  for (std::size_t i = 0; i < x.digits.size(); ++i) {
    int d = x.digits[i];
    if (d == 0) continue;
    if (!s.empty()) s += '+';
    if (d != 1) s += std::to_string(d);
    s += letter;
    s += std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

EnumerationMode parse_mode(std::string_view text) {
  if (text == "graded-lex") return EnumerationMode::graded_lex;
  if (text == "plain-lex") return EnumerationMode::plain_lex;
  throw Error("unknown enumeration mode \"" + std::string(text) + "\"");
}

std::string to_string(EnumerationMode mode) {
  return mode == EnumerationMode::graded_lex ? "graded-lex" : "plain-lex";
}

// ---------------------------------------------------------------------------

ElementOrder::ElementOrder(AbelianGroup group, EnumerationMode mode)
    : group_(std::move(group)), mode_(mode) {
  const std::uint64_t n = group_.order();
  elements_.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) elements_.push_back(group_.element(c));
  if (mode_ == EnumerationMode::graded_lex) {
    auto support = [](const AbelianElement& x) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < x.digits.size(); ++i) {
        if (x.digits[i] != 0) s.push_back(i);
      }
      return s;
    };
    auto nonzero_digits = [](const AbelianElement& x) {
      std::vector<int> d;
      for (int v : x.digits) {
        if (v != 0) d.push_back(v);
      }
      return d;
    };
    std::stable_sort(elements_.begin(), elements_.end(),
                     [&](const AbelianElement& a, const AbelianElement& b) {
                       auto sa = support(a);
                       auto sb = support(b);
                       if (sa.size() != sb.size()) return sa.size() < sb.size();
                       if (sa != sb) return sa < sb;
                       return nonzero_digits(a) < nonzero_digits(b);
                     });
  }
  position_.assign(n, 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) position_[group_.code(elements_[i])] = i + 1;
}

const AbelianElement& ElementOrder::at(std::size_t position) const {
  if (position < 1 || position > elements_.size()) throw Error("position out of range");
  return elements_[position - 1];
}

std::size_t ElementOrder::position(const AbelianElement& x) const {
  return position_[group_.code(x)];
}

// ---------------------------------------------------------------------------

std::size_t rank_mod_p(std::vector<AbelianElement> vectors, int p) {
  std::size_t rank = 0;
  if (vectors.empty()) return 0;
  const std::size_t cols = vectors.front().digits.size();
  for (std::size_t c = 0; c < cols && rank < vectors.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < vectors.size() && mod(vectors[pivot].digits[c], p) == 0) ++pivot;
    if (pivot == vectors.size()) continue;
    std::swap(vectors[rank], vectors[pivot]);
    int inv = inverse_mod(mod(vectors[rank].digits[c], p), p);
    for (auto& d : vectors[rank].digits) d = mod(static_cast<long long>(d) * inv, p);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      if (r == rank) continue;
      int factor = mod(vectors[r].digits[c], p);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        vectors[r].digits[j] = mod(vectors[r].digits[j] - static_cast<long long>(factor) * vectors[rank].digits[j], p);
      }
    }
    ++rank;
  }
  return rank;
}

bool is_basis(const std::vector<AbelianElement>& c, const AbelianGroup& a) {
  require_elementary(a, "is_basis");
  if (c.size() != a.rank()) return false;
  for (const auto& x : c) {
    if (!a.contains(x)) throw Error("is_basis: element not in group");
  }
  return rank_mod_p(c, a.elementary_prime()) == a.rank();
}

// ---------------------------------------------------------------------------

CyclicSubgroupIndex::CyclicSubgroupIndex(const ElementOrder& order) : group_(order.group()) {
  require_elementary(group_, "cyclic_subgroups");
  const int p = group_.elementary_prime();
  line_of_code_.assign(group_.order(), SIZE_MAX);
  multiplier_of_code_.assign(group_.order(), 0);
  for (std::size_t pos = 2; pos <= order.size(); ++pos) {
    const AbelianElement& x = order.at(pos);
    if (line_of_code_[group_.code(x)] != SIZE_MAX) continue;
    const std::size_t id = canonical_.size();
    canonical_.push_back(x);
    std::vector<AbelianElement> members;
    for (int s = 1; s < p; ++s) {
      AbelianElement y = combine(group_, group_.identity(), x, s);
      line_of_code_[group_.code(y)] = id;
      multiplier_of_code_[group_.code(y)] = s;
      members.push_back(std::move(y));
    }
    members_.push_back(std::move(members));
  }
}

std::size_t CyclicSubgroupIndex::subgroup_of(const AbelianElement& x) const {
  std::size_t id = line_of_code_[group_.code(x)];
  if (id == SIZE_MAX) throw Error("identity lies in no non-trivial cyclic subgroup");
  return id;
}

int CyclicSubgroupIndex::multiplier_of(const AbelianElement& x) const {
  subgroup_of(x);
  return multiplier_of_code_[group_.code(x)];
}

// ---------------------------------------------------------------------------

ModMatrix ModMatrix::identity(int p, std::size_t n) {
  ModMatrix m{p, n, std::vector<int>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

AbelianElement ModMatrix::apply(const AbelianElement& x) const {
  AbelianElement r{std::vector<int>(n, 0)};
  for (std::size_t c = 0; c < n; ++c) {
    long long s = 0;
    for (std::size_t k = 0; k < n; ++k) s += static_cast<long long>(x.digits[k]) * at(k, c);
    r.digits[c] = mod(s, p);
  }
  return r;
}

ModMatrix ModMatrix::operator*(const ModMatrix& other) const {
  ModMatrix r{p, n, std::vector<int>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long long s = 0;
      for (std::size_t k = 0; k < n; ++k) s += static_cast<long long>(at(i, k)) * other.at(k, j);
      r.at(i, j) = mod(s, p);
    }
  }
  return r;
}

std::uint64_t gl_order(int p, int k) {
  std::uint64_t pk = 1;
  for (int i = 0; i < k; ++i) pk *= static_cast<std::uint64_t>(p);
  std::uint64_t result = 1;
  std::uint64_t pj = 1;
  for (int j = 0; j < k; ++j) {
    result *= pk - pj;
    pj *= static_cast<std::uint64_t>(p);
  }
  return result;
}

std::vector<ModMatrix> gl_generators(int p, int k) {
  const std::size_t n = static_cast<std::size_t>(k);
  if (k == 1) {
    // GL(1,p) is generated by a primitive root.
    for (int g = 1; g < p; ++g) {
      int x = 1;
      int ord = 0;
      do {
        x = (x * g) % p;
        ++ord;
      } while (x != 1);
      if (ord == p - 1) return {ModMatrix{p, 1, {g}}};
    }
  }
  std::uint64_t target = 1;
  for (int i = 0; i < k; ++i) target *= static_cast<std::uint64_t>(p);
  target -= 1;
  // Companion matrix of x^k + c_{k-1} x^{k-1} + ... + c_0 acting on row
  // vectors; search coefficient vectors in lexicographic order for one of
  // multiplicative order p^k - 1.
  std::vector<int> coeffs(n, 0);
  const ModMatrix id = ModMatrix::identity(p, n);
  for (;;) {
    if (coeffs[0] != 0) {
      ModMatrix c{p, n, std::vector<int>(n * n, 0)};
      for (std::size_t i = 0; i + 1 < n; ++i) c.at(i, i + 1) = 1;
      for (std::size_t j = 0; j < n; ++j) c.at(n - 1, j) = mod(-coeffs[j], p);
      ModMatrix power = c;
      std::uint64_t ord = 1;
      while (!(power == id) && ord <= target) {
        power = power * c;
        ++ord;
      }
      if (ord == target) {
        ModMatrix t = id;
        t.at(0, 1) = 1;
        return {c, t};
      }
    }
    std::size_t i = 0;
    while (i < n && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == n) break;
  }
  throw Error("no primitive polynomial found");
}

ModMatrix matrix_from_rows(const std::vector<AbelianElement>& rows, int p) {
  const std::size_t n = rows.size();
  ModMatrix m{p, n, std::vector<int>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = mod(rows[i].digits.at(j), p);
  }
  return m;
}

ModMatrix inverse(const ModMatrix& m) {
  const std::size_t n = m.n;
  const int p = m.p;
  ModMatrix a = m;
  ModMatrix r = ModMatrix::identity(p, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a.at(pivot, c) == 0) ++pivot;
    if (pivot == n) throw Error("matrix is singular mod " + std::to_string(p));
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a.at(c, j), a.at(pivot, j));
      std::swap(r.at(c, j), r.at(pivot, j));
    }
    int inv = inverse_mod(a.at(c, c), p);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(c, j) = mod(static_cast<long long>(a.at(c, j)) * inv, p);
      r.at(c, j) = mod(static_cast<long long>(r.at(c, j)) * inv, p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      int f = a.at(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) = mod(a.at(i, j) - static_cast<long long>(f) * a.at(c, j), p);
        r.at(i, j) = mod(r.at(i, j) - static_cast<long long>(f) * r.at(c, j), p);
      }
    }
  }
  return r;
}

Permutation matrix_action(const ElementOrder& order, const ModMatrix& m) {
  const std::size_t degree = order.size() - 1;
  std::vector<Point> images(degree);
  for (std::size_t pos = 2; pos <= order.size(); ++pos) {
    images[pos - 2] = static_cast<Point>(order.position(m.apply(order.at(pos))) - 2);
  }
  return Permutation(std::move(images));
}

PermutationGroup automorphism_perm_group(const ElementOrder& order, ActionDomain on) {
  const AbelianGroup& a = order.group();
  require_elementary(a, "automorphism_perm_group");
  const int p = a.elementary_prime();
  const int k = static_cast<int>(a.rank());
  std::vector<Permutation> gens;
  if (on == ActionDomain::elements) {
    for (const auto& m : gl_generators(p, k)) gens.push_back(matrix_action(order, m));
    return PermutationGroup(order.size() - 1, std::move(gens));
  }
  CyclicSubgroupIndex lines(order);
  for (const auto& m : gl_generators(p, k)) {
    std::vector<Point> images(lines.size());
    for (std::size_t id = 0; id < lines.size(); ++id) {
      images[id] = static_cast<Point>(lines.subgroup_of(m.apply(lines.canonical(id))));
    }
    gens.emplace_back(std::move(images));
  }
  return PermutationGroup(lines.size(), std::move(gens));
}

// ---------------------------------------------------------------------------

PointedBijection::PointedBijection(AbelianGroup domain, AbelianGroup codomain,
                                   std::vector<std::uint64_t> table_by_code)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table_by_code)) {
  if (domain_.order() != codomain_.order()) throw Error("bijection: group orders differ");
  if (table_.size() != domain_.order()) throw Error("bijection: table size mismatch");
  std::vector<bool> hit(codomain_.order(), false);
  for (std::uint64_t y : table_) {
    if (y >= codomain_.order() || hit[y]) throw Error("bijection: table is not a bijection");
    hit[y] = true;
  }
  // Code 0 is the identity in every group.
  if (table_[0] != 0) throw Error("bijection: identity is moved");
}

AbelianElement PointedBijection::operator()(const AbelianElement& x) const {
  return codomain_.element(table_[domain_.code(x)]);
}

AbelianElement PointedBijection::preimage(const AbelianElement& y) const {
  const std::uint64_t target = codomain_.code(y);
  for (std::uint64_t c = 0; c < table_.size(); ++c) {
    if (table_[c] == target) return domain_.element(c);
  }
  throw Error("preimage: unreachable");
}

PointedBijection PointedBijection::inverse() const {
  std::vector<std::uint64_t> inv(table_.size());
  for (std::uint64_t c = 0; c < table_.size(); ++c) inv[table_[c]] = c;
  return PointedBijection(codomain_, domain_, std::move(inv));
}

Permutation PointedBijection::as_permutation(const ElementOrder& order) const {
  if (!(order.group() == domain_) || !(domain_ == codomain_)) {
    throw Error("as_permutation: bijection is not a self-map of the ordered group");
  }
  std::vector<Point> images(order.size() - 1);
  for (std::size_t pos = 2; pos <= order.size(); ++pos) {
    images[pos - 2] = static_cast<Point>(order.position((*this)(order.at(pos))) - 2);
  }
  return Permutation(std::move(images));
}

PointedBijection PointedBijection::from_permutation(const ElementOrder& order, const Permutation& p) {
  const AbelianGroup& a = order.group();
  if (p.degree() != order.size() - 1) throw Error("from_permutation: degree must be |A| - 1");
  std::vector<std::uint64_t> table(a.order(), 0);
  for (std::size_t pos = 2; pos <= order.size(); ++pos) {
    table[a.code(order.at(pos))] = a.code(order.at(p[static_cast<Point>(pos - 2)] + 2));
  }
  return PointedBijection(a, a, std::move(table));
}

PointedBijection bijection_from_cycles(const ElementOrder& order, std::string_view cycles) {
  Permutation full = Permutation::from_cycles(cycles, order.size());
  if (full[0] != 0) throw Error("bijection: position 1 (the identity) must be fixed");
  std::vector<Point> images(order.size() - 1);
  for (Point x = 1; x < order.size(); ++x) images[x - 1] = full[x] - 1;
  return PointedBijection::from_permutation(order, Permutation(std::move(images)));
}

PointedBijection bijection_from_images(const ElementOrder& order, const std::vector<std::size_t>& images) {
  if (images.size() + 1 != order.size()) throw Error("image table must list every element of A#");
  std::vector<Point> pts(images.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (images[j] < 2 || images[j] > order.size()) {
      throw Error("image table entry " + std::to_string(images[j]) + " out of range 2.." +
                  std::to_string(order.size()));
    }
    pts[j] = static_cast<Point>(images[j] - 2);
  }
  return PointedBijection::from_permutation(order, Permutation(std::move(pts)));
}

std::string bijection_to_cycles(const ElementOrder& order, const PointedBijection& f) {
  Permutation p = f.as_permutation(order);
  std::vector<Point> full(order.size());
  full[0] = 0;
  for (Point x = 0; x < p.degree(); ++x) full[x + 1] = p[x] + 1;
  return Permutation(std::move(full)).to_cycles();
}

std::vector<std::size_t> bijection_to_images(const ElementOrder& order, const PointedBijection& f) {
  Permutation p = f.as_permutation(order);
  std::vector<std::size_t> images(p.degree());
  for (Point x = 0; x < p.degree(); ++x) images[x] = p[x] + 2;
  return images;
}

PointedBijection identity_bijection(const AbelianGroup& a) {
  std::vector<std::uint64_t> table(a.order());
  std::iota(table.begin(), table.end(), std::uint64_t{0});
  return PointedBijection(a, a, std::move(table));
}

PointedBijection example2_map(int p) {
  AbelianGroup a = AbelianGroup::elementary(p, 2);
  std::vector<std::uint64_t> table(a.order());
  for (std::uint64_t c = 0; c < a.order(); ++c) {
    AbelianElement x = a.element(c);
    // x = i(a1 + j a2) when the a1-digit i is non-zero.
    if (x.digits[0] != 0 && x.digits[1] != 0) x.digits[1] = mod(-x.digits[1], p);
    table[c] = a.code(x);
  }
  return PointedBijection(a, a, std::move(table));
}

PointedBijection transposition(const ElementOrder& order, std::size_t pos_a, std::size_t pos_b) {
  if (pos_a < 2 || pos_b < 2 || pos_a > order.size() || pos_b > order.size() || pos_a == pos_b) {
    throw Error("transposition: positions must be distinct and in 2..|A|");
  }
  return bijection_from_cycles(order, "(" + std::to_string(pos_a) + "," + std::to_string(pos_b) + ")");
}

PointedBijection line_linear_extension(const ElementOrder& order, const Permutation& on_lines) {
  const AbelianGroup& a = order.group();
  CyclicSubgroupIndex lines(order);
  if (on_lines.degree() != lines.size()) throw Error("line permutation has wrong degree");
  const int p = a.elementary_prime();
  std::vector<std::uint64_t> table(a.order(), 0);
  for (std::size_t id = 0; id < lines.size(); ++id) {
    const AbelianElement& src = lines.canonical(id);
    const AbelianElement& dst = lines.canonical(on_lines[static_cast<Point>(id)]);
    for (int s = 1; s < p; ++s) {
      table[a.code(combine(a, a.identity(), src, s))] = a.code(combine(a, a.identity(), dst, s));
    }
  }
  return PointedBijection(a, a, std::move(table));
}

PointedBijection bijection_from_matrix(const AbelianGroup& a, const ModMatrix& m) {
  std::vector<std::uint64_t> table(a.order());
  for (std::uint64_t c = 0; c < a.order(); ++c) table[c] = a.code(m.apply(a.element(c)));
  return PointedBijection(a, a, std::move(table));
}

std::string bijection_to_json(const ElementOrder& order, const PointedBijection& f) {
  nlohmann::ordered_json j;
  j["p"] = order.group().elementary_prime();
  j["k"] = order.group().rank();
  j["mode"] = to_string(order.mode());
  j["images"] = bijection_to_images(order, f);
  return j.dump();
}

PointedBijection bijection_from_json(std::string_view text, EnumerationMode* mode_out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("f-file: ") + e.what());
  }
  if (!j.contains("p") || !j.contains("k") || !j.contains("images")) {
    throw Error("f-file: needs \"p\", \"k\" and \"images\"");
  }
  EnumerationMode mode = parse_mode(j.value("mode", std::string("graded-lex")));
  if (mode_out) *mode_out = mode;
  ElementOrder order(AbelianGroup::elementary(j["p"].get<int>(), j["k"].get<int>()), mode);
  return bijection_from_images(order, j["images"].get<std::vector<std::size_t>>());
}

}  // namespace wkc
