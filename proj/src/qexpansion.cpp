#include "dtower/qexpansion.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dtower {

JacobiFormMeta modular_meta(int weight) {
  JacobiFormMeta m;
  m.weight2 = 2 * weight;
  return m;
}

JacobiFormMeta jacobi_meta(int weight, const Rational& index, std::vector<Rational> norm_form, std::string lattice,
                           std::string symmetry) {
  JacobiFormMeta m;
  m.weight2 = 2 * weight;
  m.index = index;
  m.norm_form = std::move(norm_form);
  m.lattice = std::move(lattice);
  m.symmetry = std::move(symmetry);
  return m;
}

QExpansion::QExpansion(std::size_t nvars, int trunc24) : nvars_(nvars), trunc_(trunc24) {
  if (nvars > kMaxVars) throw std::invalid_argument("too many variables for a q-expansion");
}

QExpansion QExpansion::constant(std::size_t nvars, const Rational& c, int trunc24) {
  QExpansion out(nvars, trunc24);
  out.add_term(0, LaurentPoly::constant(nvars, c));
  return out;
}

LaurentPoly QExpansion::coefficient(int q24) const {
  if (q24 >= trunc_)
    throw PrecisionError("coefficient of " + q_power_string(q24) + " requested but the expansion is only known below " +
                         q_power_string(trunc_));
  auto it = coeffs_.find(q24);
  return it == coeffs_.end() ? LaurentPoly(nvars_) : it->second;
}

void QExpansion::add_term(int q24, const LaurentPoly& p) {
  if (p.nvars() != nvars_) throw std::invalid_argument("add_term: variable count mismatch");
  if (q24 >= trunc_ || p.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(q24, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void QExpansion::set_meta(std::optional<JacobiFormMeta> m) {
  if (m && !m->norm_form.empty() && m->norm_form.size() != nvars_)
    throw MetaError("norm form length does not match the variable count");
  meta_ = std::move(m);
}

QExpansion QExpansion::with_meta(std::optional<JacobiFormMeta> m) const {
  QExpansion out = *this;
  out.set_meta(std::move(m));
  return out;
}

QExpansion QExpansion::truncated(int t24) const {
  if (t24 >= trunc_) return *this;
  QExpansion out(nvars_, t24);
  for (const auto& [e, p] : coeffs_) {
    if (e >= t24) break;
    out.coeffs_.emplace_hint(out.coeffs_.end(), e, p);
  }
  out.meta_ = meta_;
  return out;
}

bool QExpansion::integral_q() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.first % kQUnit == 0; });
}

bool operator==(const QExpansion& a, const QExpansion& b) {
  return a.nvars_ == b.nvars_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
}

QExpansion& QExpansion::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [e, p] : coeffs_) p *= c;
  return *this;
}

namespace {

// A zero-variable series multiplies through; otherwise counts must agree.
std::size_t joint_nvars(const QExpansion& a, const QExpansion& b, const char* op) {
  if (a.nvars() == b.nvars()) return a.nvars();
  if (a.nvars() == 0) return b.nvars();
  if (b.nvars() == 0) return a.nvars();
  throw std::invalid_argument(std::string(op) + ": incompatible variable counts " + std::to_string(a.nvars()) +
                              " and " + std::to_string(b.nvars()));
}

QExpansion lift(const QExpansion& a, std::size_t nvars) {
  if (a.nvars() == nvars) return a;
  QExpansion out(nvars, a.trunc24());
  for (const auto& [e, p] : a.coefficients()) out.add_term(e, LaurentPoly::constant(nvars, p.value_at_one()));
  if (a.meta()) out.set_meta(*a.meta());
  return out;
}

std::optional<JacobiFormMeta> sum_meta(const QExpansion& a, const QExpansion& b) {
  if (!a.meta() || !b.meta()) return std::nullopt;
  const auto& ma = *a.meta();
  const auto& mb = *b.meta();
  if (ma.weight2 != mb.weight2 || ma.index != mb.index)
    throw MetaError("adding forms of different weight or index (" + to_string(ma.weight()) + "," + to_string(ma.index) +
                    ") vs (" + to_string(mb.weight()) + "," + to_string(mb.index) + ")");
  JacobiFormMeta out = ma;
  if (ma.norm_form.empty()) out.norm_form = mb.norm_form;
  if (ma.symmetry != mb.symmetry) out.symmetry.clear();
  if (ma.lattice != mb.lattice && !mb.lattice.empty()) out.lattice = ma.lattice.empty() ? mb.lattice : ma.lattice;
  return out;
}

const std::vector<Rational>& pick_norm_form(const JacobiFormMeta& ma, const JacobiFormMeta& mb) {
  if (ma.norm_form.empty()) return mb.norm_form;
  if (mb.norm_form.empty()) return ma.norm_form;
  if (ma.norm_form != mb.norm_form && ma.index != 0 && mb.index != 0)
    throw MetaError("combining forms with different norm forms");
  return ma.index != 0 ? ma.norm_form : mb.norm_form;
}

std::optional<JacobiFormMeta> product_meta(const QExpansion& a, const QExpansion& b, int sign) {
  if (!a.meta() || !b.meta()) return std::nullopt;
  const auto& ma = *a.meta();
  const auto& mb = *b.meta();
  JacobiFormMeta out;
  out.weight2 = ma.weight2 + sign * mb.weight2;
  out.index = sign > 0 ? Rational(ma.index + mb.index) : Rational(ma.index - mb.index);
  out.norm_form = pick_norm_form(ma, mb);
  if (a.nvars() == 0) {
    out.lattice = mb.lattice;
    out.symmetry = mb.symmetry;
  } else if (b.nvars() == 0) {
    out.lattice = ma.lattice;
    out.symmetry = ma.symmetry;
  } else {
    out.lattice = ma.lattice == mb.lattice ? ma.lattice : std::string{};
    out.symmetry = ma.symmetry == mb.symmetry ? ma.symmetry : std::string{};
  }
  return out;
}

QExpansion add_impl(const QExpansion& a, const QExpansion& b, int sign) {
  const std::size_t n = joint_nvars(a, b, "add");
  QExpansion la = lift(a, n), lb = lift(b, n);
  QExpansion out(n, std::min(a.trunc24(), b.trunc24()));
  for (const auto& [e, p] : la.coefficients()) out.add_term(e, p);
  for (const auto& [e, p] : lb.coefficients()) out.add_term(e, sign > 0 ? p : -p);
  out.set_meta(sum_meta(a, b));
  return out;
}

}  // namespace

QExpansion operator+(const QExpansion& a, const QExpansion& b) { return add_impl(a, b, +1); }
QExpansion operator-(const QExpansion& a, const QExpansion& b) { return add_impl(a, b, -1); }

QExpansion operator*(const QExpansion& a, const QExpansion& b) {
  const std::size_t n = joint_nvars(a, b, "multiply");
  const int trunc = std::min(a.trunc24() + b.valuation24(), b.trunc24() + a.valuation24());
  QExpansion out(n, trunc);
  const QExpansion la = lift(a, n), lb = lift(b, n);
  // Group the contributions by output order so each order is summed in one accumulator.
  std::map<int, std::vector<std::pair<const LaurentPoly*, const LaurentPoly*>>> by_order;
  for (const auto& [ea, pa] : la.coefficients()) {
    if (ea + lb.valuation24() >= trunc) break;
    for (const auto& [eb, pb] : lb.coefficients()) {
      if (ea + eb >= trunc) break;
      by_order[ea + eb].emplace_back(&pa, &pb);
    }
  }
  for (const auto& [e, pairs] : by_order) {
    if (pairs.size() == 1) {
      out.add_term(e, *pairs.front().first * *pairs.front().second);
      continue;
    }
    std::size_t expected = 0;
    for (const auto& [pa, pb] : pairs) expected += std::max(pa->size(), pb->size());
    TermAccumulator acc(n, expected);
    for (const auto& [pa, pb] : pairs) {
      const LaurentPoly& small = pa->size() <= pb->size() ? *pa : *pb;
      const LaurentPoly& large = pa->size() <= pb->size() ? *pb : *pa;
      for (const auto& [m, c] : small.terms()) acc.add_shifted(large, m, c);
    }
    out.add_term(e, acc.finish());
  }
  out.set_meta(product_meta(a, b, +1));
  return out;
}

QExpansion operator/(const QExpansion& num, const QExpansion& den) {
  const std::size_t n = joint_nvars(num, den, "divide");
  if (den.is_zero()) throw std::domain_error("divide: divisor vanishes to its known precision");
  const QExpansion ln = lift(num, n), ld = lift(den, n);
  const int vn = ln.valuation24(), vd = ld.valuation24();
  const int trunc = std::min(ln.trunc24(), ld.trunc24() + vn - vd) - vd;
  QExpansion out(n, trunc);
  out.set_meta(product_meta(num, den, -1));
  if (num.is_zero()) return out;

  const LaurentPoly& d0 = ld.coefficients().begin()->second;
  std::map<int, LaurentPoly> rem;
  for (const auto& [e, p] : ln.coefficients())
    if (e < trunc + vd) rem.emplace(e, p);

  while (!rem.empty()) {
    auto top = rem.begin();
    const int k = top->first;
    if (k >= trunc + vd) break;
    const int e = k - vd;
    auto qe = try_exact_divide(top->second, d0);
    if (!qe)
      throw InexactDivision("divide: coefficient of " + q_power_string(e) + " of the quotient is not a Laurent polynomial");
    rem.erase(top);
    for (auto it = std::next(ld.coefficients().begin()); it != ld.coefficients().end(); ++it) {
      const int target = it->first + e;
      if (target >= trunc + vd) break;
      LaurentPoly prod = *qe * it->second;
      auto [rit, inserted] = rem.try_emplace(target, LaurentPoly(n));
      rit->second -= prod;
      if (rit->second.is_zero()) rem.erase(rit);
    }
    out.add_term(e, *qe);
  }
  return out;
}

QExpansion restrict_last(const QExpansion& a) {
  if (a.nvars() == 0) throw std::invalid_argument("restrict_last: no variable to restrict");
  QExpansion out(a.nvars() - 1, a.trunc24());
  for (const auto& [e, p] : a.coefficients()) out.add_term(e, restrict_variable(p, a.nvars() - 1));
  if (a.meta()) {
    JacobiFormMeta m = *a.meta();
    if (!m.norm_form.empty()) m.norm_form.pop_back();
    out.set_meta(m);
  }
  return out;
}

QExpansion rescale_tau(const QExpansion& a, int c) {
  if (c <= 0) throw std::invalid_argument("rescale_tau: factor must be positive");
  QExpansion out(a.nvars(), a.trunc24() * c);
  for (const auto& [e, p] : a.coefficients()) out.add_term(e * c, scale_exponents(p, c));
  if (a.meta()) {
    JacobiFormMeta m = *a.meta();
    m.index *= c;
    out.set_meta(m);
  }
  return out;
}

QExpansion substitute_linear(const QExpansion& a, const std::vector<std::vector<Rational>>& matrix) {
  QExpansion out(a.nvars(), a.trunc24());
  for (const auto& [e, p] : a.coefficients()) out.add_term(e, substitute_linear(p, matrix));
  if (a.meta() && !a.meta()->norm_form.empty()) {
    const std::size_t n = a.nvars();
    // Inverse by Gauss-Jordan.
    std::vector<std::vector<Rational>> m = matrix, inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      std::swap(inv[piv], inv[col]);
      Rational f = m[col][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[col][c] /= f;
        inv[col][c] /= f;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r][col] == 0) continue;
        Rational g = m[r][col];
        for (std::size_t c = 0; c < n; ++c) {
          m[r][c] -= g * m[col][c];
          inv[r][c] -= g * inv[col][c];
        }
      }
    }
    const auto& d = a.meta()->norm_form;
    std::vector<Rational> pulled(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) s += inv[i][k] * d[k] * inv[j][k];
        if (i == j)
          pulled[i] = s;
        else if (s != 0)
          throw MetaError("substitute_linear: pulled-back norm form is not diagonal");
      }
    JacobiFormMeta meta = *a.meta();
    meta.norm_form = std::move(pulled);
    out.set_meta(meta);
  } else if (a.meta()) {
    out.set_meta(*a.meta());
  }
  return out;
}

QExpansion act(const SignedPermutation& g, const QExpansion& a) {
  return map_coefficients(a, a.nvars(), [&](const LaurentPoly& p) { return act(g, p); });
}

QExpansion embed(const QExpansion& a, std::size_t nvars, const std::vector<std::size_t>& positions) {
  QExpansion out(nvars, a.trunc24());
  for (const auto& [e, p] : a.coefficients()) out.add_term(e, embed(p, nvars, positions));
  return out;
}

Rational lattice_norm(const Monomial& m, const std::vector<Rational>& norm_form) {
  Rational s = 0;
  for (std::size_t i = 0; i < norm_form.size(); ++i)
    if (m.doubled[i] != 0) s += norm_form[i] * (m.doubled[i] * m.doubled[i]);
  return s / 4;
}

bool support_check(const QExpansion& a, SupportKind kind) {
  if (!a.meta()) throw MetaError("support_check: expansion carries no meta");
  const auto& meta = *a.meta();
  if (kind != SupportKind::weak && meta.norm_form.size() != a.nvars())
    throw MetaError("support_check: norm form missing");
  for (const auto& [e, p] : a.coefficients()) {
    if (e < 0) return false;
    if (kind == SupportKind::weak) continue;
    const Rational two_mn = 2 * meta.index * make_rational(e, kQUnit);
    for (const auto& [m, c] : p.terms()) {
      const Rational ll = lattice_norm(m, meta.norm_form);
      if (kind == SupportKind::holomorphic ? two_mn < ll : two_mn <= ll) return false;
    }
  }
  return true;
}

std::string q_power_string(int q24) {
  Rational r = make_rational(q24, kQUnit);
  if (r == 0) return "q^0";
  if (r == 1) return "q";
  if (is_integer(r)) return "q^" + to_string(r);
  return "q^(" + to_string(r) + ")";
}

std::string to_string(const QExpansion& a) {
  std::ostringstream os;
  if (a.is_zero()) os << "0\n";
  for (const auto& [e, p] : a.coefficients()) os << q_power_string(e) << ": " << to_string(p) << "\n";
  os << "+ O(" << q_power_string(a.trunc24()) << ")\n";
  return os.str();
}

}  // namespace dtower

namespace dtower {

QExpansion outer_product(const std::vector<QExpansion>& factors, int trunc24) {
  if (factors.empty()) return QExpansion::constant(0, 1, trunc24);
  std::size_t nvars = 0;
  for (const auto& f : factors) nvars += f.nvars();
  if (nvars > kMaxVars) throw std::invalid_argument("outer_product: too many variables");
  const std::size_t k = factors.size();
  // suffix[i] = sum of valuations of factors i..k-1
  std::vector<int> suffix(k + 1, 0), offset(k, 0);
  for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] + factors[i].valuation24();
  for (std::size_t i = 1; i < k; ++i) offset[i] = offset[i - 1] + static_cast<int>(factors[i - 1].nvars());
  int trunc = trunc24;
  for (std::size_t i = 0; i < k; ++i)
    trunc = std::min(trunc, factors[i].trunc24() + suffix[0] - factors[i].valuation24());

  std::map<int, std::vector<LaurentPoly::Term>> levels;
  Monomial mono;
  std::vector<Rational> coef(k + 1);
  coef[0] = 1;
  auto rec = [&](auto&& self, std::size_t i, int q) -> void {
    if (i == k) {
      levels[q].emplace_back(mono, coef[k]);
      return;
    }
    const auto& f = factors[i];
    for (const auto& [e, p] : f.coefficients()) {
      if (q + e + suffix[i + 1] >= trunc) break;
      for (const auto& [m, c] : p.terms()) {
        for (std::size_t v = 0; v < f.nvars(); ++v) mono.doubled[offset[i] + v] = m.doubled[v];
        coef[i + 1] = coef[i] * c;
        self(self, i + 1, q + e);
      }
    }
    for (std::size_t v = 0; v < f.nvars(); ++v) mono.doubled[offset[i] + v] = 0;
  };
  rec(rec, 0, 0);

  QExpansion out(nvars, trunc);
  for (auto& [q, terms] : levels) out.add_term(q, LaurentPoly::from_terms(nvars, std::move(terms)));
  return out;
}

}  // namespace dtower
