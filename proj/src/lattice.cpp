#include "dtower/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <regex>

namespace dtower {

std::string GroupTag::to_string() const {
  switch (kind) {
    case GroupKind::weyl: return "W(D" + std::to_string(n) + ")";
    case GroupKind::orthogonal: return "O(D" + std::to_string(n) + ")";
    case GroupKind::orthogonal_prime: return "O'(D" + std::to_string(n) + ")";
  }
  return "?";
}

GroupTag GroupTag::parse(const std::string& text) {
  static const std::regex re(R"((W|O|O')\(D(\d+)\))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("unknown group '" + text + "'");
  GroupTag g;
  g.kind = m[1] == "W" ? GroupKind::weyl : m[1] == "O" ? GroupKind::orthogonal : GroupKind::orthogonal_prime;
  g.n = std::stoi(m[2]);
  return g;
}

GroupTag full_signed_group(int n) {
  return GroupTag{n == 4 ? GroupKind::orthogonal_prime : GroupKind::orthogonal, n};
}

std::vector<SignedPermutation> group_generators(const GroupTag& g) {
  if (g.n < 1 || g.n > static_cast<int>(kMaxVars)) throw std::invalid_argument("group rank out of range");
  if (g.kind == GroupKind::orthogonal && g.n == 4)
    throw std::invalid_argument("O(D4) contains the triality automorphisms, which are not signed permutations; use O'(D4)");
  if (g.kind == GroupKind::orthogonal_prime && g.n != 4) throw std::invalid_argument("O'(Dn) is only defined for n = 4");
  if (g.kind == GroupKind::weyl && g.n < 2) throw std::invalid_argument("W(Dn) needs n >= 2");
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<SignedPermutation> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(SignedPermutation::transposition(n, i, i + 1));
  if (g.kind == GroupKind::weyl)
    gens.push_back(SignedPermutation::sign_flip(n, {0, 1}));
  else
    gens.push_back(SignedPermutation::sign_flip(n, {0}));
  return gens;
}

bool is_invariant(const QExpansion& a, const GroupTag& g) {
  if (static_cast<int>(a.nvars()) != g.n) throw std::invalid_argument("is_invariant: group rank differs from nvars");
  const auto gens = group_generators(g);
  for (const auto& [e, p] : a.coefficients())
    for (const auto& s : gens)
      if (!(act(s, p) == p)) return false;
  return true;
}

bool is_anti_invariant(const QExpansion& a, int n) {
  if (!is_invariant(a, GroupTag{GroupKind::weyl, n})) return false;
  const auto flip = SignedPermutation::sign_flip(static_cast<std::size_t>(n), {0});
  for (const auto& [e, p] : a.coefficients())
    if (!(act(flip, p) == -p)) return false;
  return true;
}

bool exponents_in_dual_classes(const QExpansion& a) {
  for (const auto& [e, p] : a.coefficients())
    for (const auto& [m, c] : p.terms()) {
      int odd = 0;
      for (std::size_t i = 0; i < a.nvars(); ++i) odd += m.doubled[i] % 2 != 0 ? 1 : 0;
      if (odd != 0 && odd != static_cast<int>(a.nvars())) return false;
    }
  return true;
}

Rational LatticePoint::norm() const {
  long s = 0;
  for (int y : doubled) s += static_cast<long>(y) * y;
  return make_rational(s, 4);
}

namespace {

// Doubled coordinates with the given parity (0 integral, 1 half-integral)
// and sum of squares <= bound; keep those with the coordinate sum condition.
void enumerate_coset(int n, int parity, bool even_sum, long bound, std::vector<LatticePoint>& out) {
  std::vector<int> y(static_cast<std::size_t>(n));
  auto rec = [&](auto&& self, int i, long used, long sum) -> void {
    if (i == n) {
      // Semantic coordinate sum is sum/2.
      if (even_sum && (sum / 2) % 2 != 0) return;
      out.push_back(LatticePoint{y});
      return;
    }
    for (int v = -64; v <= 64; ++v) {
      if ((v & 1) != parity) continue;
      const long sq = static_cast<long>(v) * v;
      if (used + sq > bound) continue;
      y[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, used + sq, sum + v);
    }
  };
  rec(rec, 0, 0, 0);
}

}  // namespace

std::vector<LatticePoint> enumerate_lattice_vectors(LatticeKind kind, int n, const Rational& max_norm) {
  if (max_norm < 0) throw std::invalid_argument("enumerate_lattice_vectors: max_norm must be nonnegative");
  if (n < 1) throw std::invalid_argument("enumerate_lattice_vectors: dimension must be positive");
  if (kind == LatticeKind::e8 && n != 8) throw std::invalid_argument("E8 has dimension 8");
  if (kind == LatticeKind::d16_plus && n != 16) throw std::invalid_argument("D16+ has dimension 16");
  mpz_class b = (4 * max_norm.get_num()) / max_norm.get_den();
  const long bound = b.get_si();
  if (bound > 64 * 64) throw std::invalid_argument("enumerate_lattice_vectors: norm bound too large");
  std::vector<LatticePoint> out;
  switch (kind) {
    case LatticeKind::integer: enumerate_coset(n, 0, false, bound, out); break;
    case LatticeKind::d: enumerate_coset(n, 0, true, bound, out); break;
    case LatticeKind::d_shifted: enumerate_coset(n, 1, true, bound, out); break;
    case LatticeKind::e8:
    case LatticeKind::d16_plus:
      enumerate_coset(n, 0, true, bound, out);
      enumerate_coset(n, 1, true, bound, out);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dtower

namespace dtower {

LaurentPoly orbit_sum(const std::vector<int>& doubled, bool weyl) {
  const std::size_t n = doubled.size();
  std::vector<SignedPermutation> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(SignedPermutation::transposition(n, i, i + 1));
  if (!weyl && n >= 1) gens.push_back(SignedPermutation::sign_flip(n, {0}));
  if (weyl && n >= 2) gens.push_back(SignedPermutation::sign_flip(n, {0, 1}));
  std::set<std::vector<int>> seen = {doubled};
  std::vector<std::vector<int>> frontier = {doubled};
  while (!frontier.empty()) {
    const auto v = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      auto w = g.apply(v);
      if (seen.insert(w).second) frontier.push_back(std::move(w));
    }
  }
  std::vector<LaurentPoly::Term> terms;
  for (const auto& v : seen) terms.emplace_back(Monomial::from_doubled(v), Rational(1));
  return LaurentPoly::from_terms(n, std::move(terms));
}

QExpansion lattice_theta_series(const std::vector<LatticePoint>& points, std::size_t nvars, int trunc24) {
  std::map<int, std::vector<LaurentPoly::Term>> levels;
  for (const auto& pt : points) {
    if (pt.doubled.size() < nvars) throw std::invalid_argument("lattice_theta_series: point has too few coordinates");
    // q-exponent (l,l)/2 = sum y^2 / 8 with y doubled, i.e. 3 sum y^2 in 1/24 units.
    long sq = 0;
    for (int y : pt.doubled) sq += static_cast<long>(y) * y;
    if (3 * sq >= trunc24) continue;
    std::vector<int> kept(pt.doubled.begin(), pt.doubled.begin() + static_cast<long>(nvars));
    levels[static_cast<int>(3 * sq)].emplace_back(Monomial::from_doubled(kept), Rational(1));
  }
  QExpansion out(nvars, trunc24);
  for (auto& [e, terms] : levels) out.add_term(e, LaurentPoly::from_terms(nvars, std::move(terms)));
  return out;
}

}  // namespace dtower
