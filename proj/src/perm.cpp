#include "wkc/perm.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <mutex>
#include <numeric>

namespace wkc {

namespace {

void check_degree(std::size_t degree) {
  if (degree > kMaxDegree) {
    throw CapacityError("permutation degree " + std::to_string(degree) +
                        " exceeds the ceiling of 2^21 points");
  }
}

void check_same_degree(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw Error("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                std::to_string(q.degree()));
  }
}

// Explicit transversals are kept while they fit in this many points.
constexpr std::size_t kExplicitTransversalLimit = std::size_t{1} << 24;

}  // namespace

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  check_degree(images_.size());
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw Error("image array is not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::unchecked(std::vector<Point> images) {
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::identity(std::size_t degree) {
  check_degree(degree);
  Permutation p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), Point{0});
  return p;
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  Permutation p = identity(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw Error("cycle string: expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw Error("cycle string: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc{}) throw Error("cycle string: bad point in \"" + std::string(text) + "\"");
      i = static_cast<std::size_t>(ptr - text.data());
      if (value < 1 || value > degree) {
        throw Error("cycle string: point " + std::to_string(value) + " out of range 1.." +
                    std::to_string(degree));
      }
      Point x = static_cast<Point>(value - 1);
      if (used[x]) throw Error("cycle string: point " + std::to_string(value) + " repeated");
      used[x] = true;
      cycle.push_back(x);
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      p.images_[cycle[j]] = cycle[(j + 1) % cycle.size()];
    }
    skip_space();
  }
  return p;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[images_[x]] = static_cast<Point>(x);
  return r;
}

bool Permutation::is_identity() const { return first_moved() == degree(); }

Point Permutation::first_moved() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) return static_cast<Point>(x);
  }
  return static_cast<Point>(images_.size());
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::uint64_t Permutation::order() const {
  std::uint64_t result = 1;
  for (std::size_t len : cycle_type()) result = std::lcm(result, static_cast<std::uint64_t>(len));
  return result;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out += '(';
    bool first = true;
    for (Point y = static_cast<Point>(x); !seen[y]; y = images_[y]) {
      seen[y] = true;
      if (!first) out += ',';
      out += std::to_string(y + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  check_same_degree(p, q);
  std::vector<Point> images(p.degree());
  for (std::size_t x = 0; x < images.size(); ++x) images[x] = q[p[static_cast<Point>(x)]];
  return Permutation::unchecked(std::move(images));
}

Permutation conjugate(const Permutation& p, const Permutation& g) {
  return compose(compose(g.inverse(), p), g);
}

Permutation commutator(const Permutation& p, const Permutation& q) {
  return compose(compose(p.inverse(), q.inverse()), compose(p, q));
}

std::vector<Point> orbit_of(Point point, std::span<const Permutation> gens, std::size_t degree) {
  if (point >= degree) throw Error("orbit_of: point out of range");
  std::vector<bool> seen(degree, false);
  std::vector<Point> orbit{point};
  seen[point] = true;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& g : gens) {
      Point y = g[orbit[i]];
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::vector<Point>> orbits(std::span<const Permutation> gens, std::size_t degree) {
  std::vector<std::vector<Point>> result;
  std::vector<bool> covered(degree, false);
  for (Point x = 0; x < degree; ++x) {
    if (covered[x]) continue;
    auto orb = orbit_of(x, gens, degree);
    for (Point y : orb) covered[y] = true;
    result.push_back(std::move(orb));
  }
  return result;
}

// ---------------------------------------------------------------------------

Permutation ChainLevel::representative(Point x) const {
  std::int32_t idx = orbit_index[x];
  if (idx < 0) throw Error("representative: point not in orbit");
  if (!transversal.empty()) return transversal[static_cast<std::size_t>(idx)];
  std::vector<std::int32_t> path;
  for (Point y = x; parent_gen[y] >= 0; y = parent_point[y]) path.push_back(parent_gen[y]);
  std::size_t degree = orbit_index.size();
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const Permutation& g = gens[static_cast<std::size_t>(*it)];
    for (auto& v : images) v = g[v];
  }
  return Permutation::unchecked(std::move(images));
}

StabilizerChain::StabilizerChain(std::size_t degree, std::span<const Permutation> gens)
    : degree_(degree) {
  check_degree(degree);
  std::vector<Permutation> strong;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw Error("generator degree mismatch");
    if (!g.is_identity()) strong.push_back(g);
  }
  // Initial base: every generator moves some base point.
  std::vector<Point> base;
  for (const auto& g : strong) {
    bool fixes_all = std::all_of(base.begin(), base.end(), [&](Point b) { return g[b] == b; });
    if (fixes_all) base.push_back(g.first_moved());
  }
  levels_.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    levels_[i].base = base[i];
    for (const auto& g : strong) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < i; ++j) fixes_prefix = fixes_prefix && g[base[j]] == base[j];
      if (fixes_prefix) levels_[i].gens.push_back(g);
    }
    rebuild_orbit(i);
  }

  // Deterministic Schreier-Sims: test every Schreier generator of level i
  // against the chain below it; a non-trivial residue is added and testing
  // resumes at the level where it stopped.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    auto& lv = levels_[static_cast<std::size_t>(i)];
    for (std::size_t oi = 0; oi < lv.orbit.size() && !restarted; ++oi) {
      Point beta = lv.orbit[oi];
      Permutation u = lv.representative(beta);
      for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
        const Permutation& x = lv.gens[gi];
        Point image = x[beta];
        Permutation schreier = compose(compose(u, x), lv.representative(image).inverse());
        if (schreier.is_identity()) continue;
        // Sift through the levels below i.
        Permutation h = schreier;
        std::size_t j = static_cast<std::size_t>(i) + 1;
        for (; j < levels_.size(); ++j) {
          Point y = h[levels_[j].base];
          if (!levels_[j].in_orbit(y)) break;
          h = compose(h, levels_[j].representative(y).inverse());
        }
        if (h.is_identity()) continue;
        if (j == levels_.size()) {
          ChainLevel fresh;
          fresh.base = h.first_moved();
          levels_.push_back(std::move(fresh));
        }
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gens.push_back(h);
          rebuild_orbit(l);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
}

StabilizerChain StabilizerChain::semiregular(std::size_t degree, std::span<const Permutation> gens) {
  check_degree(degree);
  StabilizerChain chain;
  chain.degree_ = degree;
  ChainLevel level;
  level.base = 0;
  for (const auto& g : gens) {
    if (g.degree() != degree) throw Error("generator degree mismatch");
    if (!g.is_identity()) level.gens.push_back(g);
  }
  if (level.gens.empty() || degree == 0) return chain;
  chain.levels_.push_back(std::move(level));
  chain.rebuild_orbit(0);
  return chain;
}

void StabilizerChain::rebuild_orbit(std::size_t level) {
  ChainLevel& lv = levels_[level];
  lv.gen_inverses.clear();
  for (const auto& g : lv.gens) lv.gen_inverses.push_back(g.inverse());
  lv.orbit.assign(1, lv.base);
  lv.orbit_index.assign(degree_, -1);
  lv.parent_gen.assign(degree_, -2);
  lv.parent_point.assign(degree_, 0);
  lv.orbit_index[lv.base] = 0;
  lv.parent_gen[lv.base] = -1;
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    Point x = lv.orbit[k];
    for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
      Point y = lv.gens[gi][x];
      if (lv.orbit_index[y] >= 0) continue;
      lv.orbit_index[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.parent_gen[y] = static_cast<std::int32_t>(gi);
      lv.parent_point[y] = x;
      lv.orbit.push_back(y);
    }
  }
  lv.transversal.clear();
  if (lv.orbit.size() * degree_ <= kExplicitTransversalLimit) {
    lv.transversal.reserve(lv.orbit.size());
    lv.transversal.push_back(Permutation::identity(degree_));
    for (std::size_t k = 1; k < lv.orbit.size(); ++k) {
      Point y = lv.orbit[k];
      const Permutation& parent =
          lv.transversal[static_cast<std::size_t>(lv.orbit_index[lv.parent_point[y]])];
      lv.transversal.push_back(compose(parent, lv.gens[static_cast<std::size_t>(lv.parent_gen[y])]));
    }
  }
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t result = 1;
  for (const auto& lv : levels_) {
    std::uint64_t len = lv.orbit.size();
    if (result > UINT64_MAX / len) throw CapacityError("group order overflows 64 bits");
    result *= len;
  }
  return result;
}

Permutation StabilizerChain::sift(const Permutation& g, std::size_t from_level) const {
  if (g.degree() != degree_) throw Error("sift: degree mismatch");
  Permutation h = g;
  for (std::size_t j = from_level; j < levels_.size(); ++j) {
    Point y = h[levels_[j].base];
    if (!levels_[j].in_orbit(y)) return h;
    h = compose(h, levels_[j].representative(y).inverse());
  }
  return h;
}

bool StabilizerChain::contains(const Permutation& g) const { return sift(g).is_identity(); }

std::vector<Permutation> StabilizerChain::elements(std::size_t cap) const {
  if (order() > cap) throw CapacityError("element enumeration exceeds cap " + std::to_string(cap));
  std::vector<Permutation> current{Permutation::identity(degree_)};
  // g = u_{k-1} ... u_1 u_0, built from the deepest level outwards.
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    std::vector<Permutation> next;
    next.reserve(current.size() * it->orbit.size());
    for (const auto& prefix : current) {
      for (Point x : it->orbit) next.push_back(compose(prefix, it->representative(x)));
    }
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------

struct PermutationGroup::Lazy {
  std::once_flag once;
  StabilizerChain chain;
};

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> gens,
                                   bool semiregular)
    : degree_(degree), gens_(std::move(gens)), semiregular_(semiregular),
      lazy_(std::make_shared<Lazy>()) {
  check_degree(degree);
  if (degree == 0) throw Error("permutation group needs degree >= 1");
  for (const auto& g : gens_) {
    if (g.degree() != degree) throw Error("generator degree mismatch");
  }
}

const StabilizerChain& PermutationGroup::chain() const {
  std::call_once(lazy_->once, [this] {
    lazy_->chain = semiregular_ ? StabilizerChain::semiregular(degree_, gens_)
                                : StabilizerChain(degree_, gens_);
  });
  return lazy_->chain;
}

bool PermutationGroup::is_trivial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const auto& g) { return g.is_identity(); });
}

PermutationGroup build_group(std::size_t degree, std::vector<Permutation> gens) {
  return PermutationGroup(degree, std::move(gens));
}

PermutationGroup normal_closure(const PermutationGroup& g, std::span<const Permutation> seeds) {
  std::vector<Permutation> gens;
  for (const auto& s : seeds) {
    if (s.degree() != g.degree()) throw Error("normal_closure: degree mismatch");
    if (!s.is_identity()) gens.push_back(s);
  }
  PermutationGroup n(g.degree(), gens, g.semiregular());
  for (std::size_t idx = 0; idx < gens.size(); ++idx) {
    for (const auto& x : g.generators()) {
      Permutation c = conjugate(gens[idx], x);
      if (n.contains(c)) continue;
      gens.push_back(std::move(c));
      n = PermutationGroup(g.degree(), gens, g.semiregular());
    }
  }
  return n;
}

PermutationGroup commutator_subgroup(const PermutationGroup& h, const PermutationGroup& k) {
  if (h.degree() != k.degree()) throw Error("commutator_subgroup: degree mismatch");
  std::vector<Permutation> seeds;
  for (const auto& x : h.generators()) {
    for (const auto& y : k.generators()) seeds.push_back(commutator(x, y));
  }
  std::vector<Permutation> ambient = h.generators();
  ambient.insert(ambient.end(), k.generators().begin(), k.generators().end());
  PermutationGroup joined(h.degree(), std::move(ambient), h.semiregular() && k.semiregular());
  return normal_closure(joined, seeds);
}

}  // namespace wkc
