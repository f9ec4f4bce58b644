#include "dtower/blocks.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "dtower/operators.hpp"

namespace dtower {

namespace {

std::mutex memo_mutex;
std::map<std::string, QExpansion>& memo_table() {
  static std::map<std::string, QExpansion> table;
  return table;
}
std::map<std::string, std::shared_ptr<std::recursive_mutex>>& key_locks() {
  static std::map<std::string, std::shared_ptr<std::recursive_mutex>> locks;
  return locks;
}

// Number of integer q-powers q^0..q^{N-1} needed so that offset24 + 24 j < trunc24.
int integer_terms(int trunc24, int offset24) {
  if (trunc24 <= offset24) return 0;
  return (trunc24 - offset24 + kQUnit - 1) / kQUnit;
}

// prod_{n>=1} (1 - q^n) as a coefficient list of length len.
std::vector<Rational> euler_product(int len) {
  std::vector<Rational> p(static_cast<std::size_t>(std::max(len, 0)), 0);
  if (len == 0) return p;
  p[0] = 1;
  for (int n = 1; n < len; ++n)
    for (int j = len - 1; j >= n; --j) p[static_cast<std::size_t>(j)] -= p[static_cast<std::size_t>(j - n)];
  return p;
}

// f^k for f with f[0] = 1 and any integer k: f_n = (1/n) sum_{j=1}^n ((k+1) j - n) p_j f_{n-j}.
std::vector<Rational> series_power(const std::vector<Rational>& p, int k) {
  std::vector<Rational> f(p.size(), 0);
  if (p.empty()) return f;
  f[0] = 1;
  for (std::size_t n = 1; n < p.size(); ++n) {
    Rational s = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (p[j] == 0) continue;
      s += Rational((k + 1) * static_cast<long>(j) - static_cast<long>(n)) * p[j] * f[n - j];
    }
    f[n] = s / static_cast<long>(n);
  }
  return f;
}

QExpansion from_coefficients(const std::vector<Rational>& c, int offset24, int trunc24) {
  QExpansion out(0, trunc24);
  for (std::size_t j = 0; j < c.size(); ++j)
    out.add_term(offset24 + kQUnit * static_cast<int>(j), LaurentPoly::constant(0, c[j]));
  return out;
}

QExpansion eisenstein(int weight, const Rational& constant, const Rational& scale, int trunc24) {
  const int len = integer_terms(trunc24, 0);
  std::vector<Rational> c(static_cast<std::size_t>(len), 0);
  if (len > 0) c[0] = constant;
  for (int n = 1; n < len; ++n) c[static_cast<std::size_t>(n)] = scale * Rational(static_cast<long>(divisor_sigma(weight - 1, n)));
  return from_coefficients(c, 0, trunc24).with_meta(modular_meta(weight));
}

JacobiFormMeta half_meta(const Rational& index, std::vector<Rational> norm, std::string lattice) {
  JacobiFormMeta m;
  m.weight2 = 1;
  m.index = index;
  m.norm_form = std::move(norm);
  m.lattice = std::move(lattice);
  return m;
}

}  // namespace

long long divisor_sigma(int k, int n) {
  if (n <= 0) throw std::invalid_argument("divisor_sigma: n must be positive");
  long long s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    long long p = 1;
    for (int i = 0; i < k; ++i) p *= d;
    s += p;
  }
  return s;
}

QExpansion memoized(const std::string& key, int trunc24, const std::function<QExpansion(int)>& compute) {
  // One lock per key: concurrent callers of the same constructor wait for the
  // first computation instead of repeating it.
  std::shared_ptr<std::recursive_mutex> key_lock;
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo_table().find(key);
    if (it != memo_table().end() && it->second.trunc24() >= trunc24) return it->second.truncated(trunc24);
    auto& slot = key_locks()[key];
    if (!slot) slot = std::make_shared<std::recursive_mutex>();
    key_lock = slot;
  }
  std::lock_guard<std::recursive_mutex> computing(*key_lock);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo_table().find(key);
    if (it != memo_table().end() && it->second.trunc24() >= trunc24) return it->second.truncated(trunc24);
  }
  QExpansion value = compute(trunc24);
  if (value.trunc24() < trunc24)
    throw std::logic_error("memoized: constructor for " + key + " delivered less precision than requested");
  std::lock_guard<std::mutex> lock(memo_mutex);
  auto [it, fresh] = memo_table().try_emplace(key, value);
  if (!fresh && it->second.trunc24() < value.trunc24()) it->second = value;
  return value.truncated(trunc24);
}

void clear_memo() {
  std::lock_guard<std::mutex> lock(memo_mutex);
  memo_table().clear();
}

QExpansion eta(int trunc24) { return eta_power(1, trunc24); }

QExpansion eta_power(int k, int trunc24) {
  return memoized("eta^" + std::to_string(k), trunc24, [k](int t) {
    const int len = integer_terms(t, k);
    std::vector<Rational> p = euler_product(len);
    if (k != 1) p = series_power(p, k);
    JacobiFormMeta m;
    m.weight2 = k;
    return from_coefficients(p, k, t).with_meta(m);
  });
}

QExpansion delta(int trunc24) { return eta_power(24, trunc24); }

QExpansion delta_power(int p, int trunc24) { return eta_power(24 * p, trunc24); }

QExpansion eisenstein_E4(int trunc24) {
  return memoized("E4", trunc24, [](int t) { return eisenstein(4, 1, 240, t); });
}

QExpansion eisenstein_E6(int trunc24) {
  return memoized("E6", trunc24, [](int t) { return eisenstein(6, 1, -504, t); });
}

QExpansion eisenstein_G2(int trunc24) {
  return memoized("G2", trunc24, [](int t) { return eisenstein(2, make_rational(-1, 24), 1, t); });
}

QExpansion theta_odd(int trunc24) {
  return memoized("theta", trunc24, [](int t) {
    QExpansion out(1, t);
    // q24 = 3 + 12 n(n+1) is symmetric under n <-> -n-1.
    for (int n = 0; 3 + 12 * n * (n + 1) < t; ++n) {
      const int e = 3 + 12 * n * (n + 1);
      const int sign = n % 2 == 0 ? 1 : -1;
      out.add_term(e, LaurentPoly::term(1, {2 * n + 1}, sign));
      out.add_term(e, LaurentPoly::term(1, {-2 * n - 1}, -sign));
    }
    out.set_meta(half_meta(make_rational(1, 2), {make_rational(1, 2)}, "A1"));
    return out;
  });
}

QExpansion theta_odd_product(int trunc24) {
  return memoized("theta-product", trunc24, [](int t) {
    const int inner = t - 3;
    QExpansion prod = QExpansion::constant(1, 1, inner);
    for (int n = 1; kQUnit * n < inner; ++n) {
      for (int s : {2, -2, 0}) {
        QExpansion f = QExpansion::constant(1, 1, inner);
        f.add_term(kQUnit * n, LaurentPoly::term(1, {s}, -1));
        prod = prod * f;
      }
    }
    QExpansion lead(1, t);
    lead.add_term(3, LaurentPoly::term(1, {1}) - LaurentPoly::term(1, {-1}));
    QExpansion out = lead * prod;
    out.set_meta(half_meta(make_rational(1, 2), {make_rational(1, 2)}, "A1"));
    return out;
  });
}

std::string to_string(ThetaChar kind) {
  switch (kind) {
    case ThetaChar::t2: return "t2";
    case ThetaChar::t3: return "t3";
    case ThetaChar::t4: return "t4";
    case ThetaChar::t1s: return "t1s";
  }
  return "?";
}

QExpansion theta_char(ThetaChar kind, int trunc24) {
  return memoized("theta-char-" + to_string(kind), trunc24, [kind](int t) {
    QExpansion out(1, t);
    const bool half = kind == ThetaChar::t2 || kind == ThetaChar::t1s;
    const bool alternating = kind == ThetaChar::t4 || kind == ThetaChar::t1s;
    // Doubled exponent x = 2m (+1 for the half cosets); q24 = 3 x^2.
    int bound = 0;
    while (3 * (2 * bound - 1) * (2 * bound - 1) < t) ++bound;
    for (int m = -bound; m <= bound; ++m) {
      const int x = 2 * m + (half ? 1 : 0);
      const int e = 3 * x * x;
      if (e >= t) continue;
      const int sign = alternating && (m % 2 != 0) ? -1 : 1;
      out.add_term(e, LaurentPoly::term(1, {x}, sign));
    }
    JacobiFormMeta meta;
    meta.weight2 = 1;
    meta.index = 1;
    meta.norm_form = {1};
    meta.lattice = "Z";
    out.set_meta(meta);
    return out;
  });
}

QExpansion phi_m2_1(int trunc24) {
  return memoized("phi-2,1", trunc24, [](int t) {
    // theta^2 has valuation 1/4; eta^{-6} has valuation -1/4.
    QExpansion th = theta_odd(t + 6);
    QExpansion out = (th * th) * eta_power(-6, t - 6);
    out.set_meta(jacobi_meta(-2, 1, {make_rational(1, 2)}, "A1", "O(A1)"));
    return out;
  });
}

QExpansion phi_0_1(int trunc24) {
  return memoized("phi0,1", trunc24, [](int t) {
    QExpansion out = Rational(-24) * modular_diff_H(phi_m2_1(t));
    out.set_meta(jacobi_meta(0, 1, {make_rational(1, 2)}, "A1", "O(A1)"));
    return out;
  });
}

}  // namespace dtower
