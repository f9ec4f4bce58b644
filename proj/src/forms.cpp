#include "dtower/forms.hpp"

#include <mutex>
#include <regex>

#include "dtower/blocks.hpp"
#include "dtower/lattice.hpp"
#include "dtower/operators.hpp"

namespace dtower {

namespace {

constexpr int Q = kQUnit;

int whole_powers(int t24) { return (t24 + Q - 1) / Q; }

void check_rank(int n, const char* who) {
  if (n < 2 || n > 8) throw std::invalid_argument(std::string(who) + ": rank must lie in 2..8");
}

std::string weyl_tag(int n) { return GroupTag{GroupKind::weyl, n}.to_string(); }
std::string full_tag(int n) { return full_signed_group(n).to_string(); }

JacobiFormMeta dn_meta(int weight, const Rational& index, int n, const std::string& symmetry) {
  return jacobi_meta(weight, index, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)),
                     "D" + std::to_string(n), symmetry);
}

QExpansion plain(const QExpansion& a) { return a.with_meta(std::nullopt); }

// theta(z_1)...theta(z_n) without meta.
QExpansion theta_product(int n, int trunc24) {
  std::vector<QExpansion> f(static_cast<std::size_t>(n), plain(theta_odd(trunc24)));
  return outer_product(f, trunc24);
}

QExpansion char_product(ThetaChar c, int trunc24) {
  std::vector<QExpansion> f(8, plain(theta_char(c, trunc24)));
  return outer_product(f, trunc24);
}

QExpansion power(const QExpansion& a, int k) {
  QExpansion out = QExpansion::constant(a.nvars(), 1, a.trunc24());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

}  // namespace

// Dividing by the binomial leading coefficient of one theta at a time is far
// cheaper than by the 2^n-term leading coefficient of the product.
QExpansion divide_by_theta_product(const QExpansion& a) {
  const std::size_t n = a.nvars();
  QExpansion out = plain(a);
  for (std::size_t i = 0; i < n; ++i) out = out / embed(plain(theta_odd(out.trunc24())), n, {i});
  return out;
}

QExpansion omega_Dn(int n, int trunc24) {
  check_rank(n, "omega_Dn");
  return memoized("omega_D" + std::to_string(n), trunc24, [n](int t) {
    QExpansion num = theta_product(n, t + 3 * n);
    QExpansion out = num * plain(eta_power(-3 * n, t - 3 * n));
    return out.with_meta(dn_meta(-n, 1, n, weyl_tag(n)));
  });
}

QExpansion theta_D8_product(int trunc24) {
  return memoized("theta_D8", trunc24,
                  [](int t) { return theta_product(8, t).with_meta(dn_meta(4, 1, 8, weyl_tag(8))); });
}

QExpansion theta_E8(int trunc24) {
  return memoized("theta_E8", trunc24, [](int t) {
    QExpansion s = char_product(ThetaChar::t3, t) + char_product(ThetaChar::t4, t) + char_product(ThetaChar::t2, t) +
                   char_product(ThetaChar::t1s, t);
    return (make_rational(1, 2) * s).with_meta(dn_meta(4, 1, 8, weyl_tag(8)));
  });
}

QExpansion theta_D16plus_restricted(int trunc24) {
  return memoized("theta_D16plus_D8", trunc24, [](int t) {
    QExpansion s(8, t);
    for (ThetaChar c : {ThetaChar::t3, ThetaChar::t4, ThetaChar::t2}) {
      QExpansion at_zero = restrict_last(plain(theta_char(c, t)));
      s = s + char_product(c, t) * power(at_zero, 8);
    }
    return (make_rational(1, 2) * s).with_meta(dn_meta(8, 1, 8, full_tag(8)));
  });
}

QExpansion phi_tilde_m4_1(int trunc24) {
  return memoized("phi_tilde_m4_1", trunc24, [](int t) {
    const int tn = t + Q;
    QExpansion num = eisenstein_E4(tn) * theta_E8(tn) - theta_D16plus_restricted(tn);
    return divide_by_delta(num).with_meta(dn_meta(-4, 1, 8, weyl_tag(8)));
  });
}

QExpansion phi_m4_1_D8(int trunc24) {
  return memoized("phi_m4_1_D8", trunc24, [](int t) {
    QExpansion out = Rational(2) * phi_tilde_m4_1(t) - eisenstein_E4(t) * omega_Dn(8, t);
    return out.with_meta(dn_meta(-4, 1, 8, full_tag(8)));
  });
}

QExpansion phi_m2_1_D8(int trunc24) {
  return memoized("phi_m2_1_D8", trunc24, [](int t) {
    return (Rational(3) * modular_diff_H(phi_m4_1_D8(t))).with_meta(dn_meta(-2, 1, 8, full_tag(8)));
  });
}

QExpansion hecke_quotient_theta_D8(int trunc24) {
  return memoized("hecke_quotient_theta_D8", trunc24, [](int t) {
    const int tq = whole_powers(t);
    // T_-(2) halves precision; the q-valuation 1 of theta_D8 is consumed by the division.
    QExpansion image = hecke_T2(theta_D8_product((2 * tq + 1) * Q));
    return divide_by_theta_product(image).with_meta(dn_meta(0, 1, 8, full_tag(8)));
  });
}

QExpansion hecke_quotient_omega_D8(int trunc24) {
  return memoized("hecke_quotient_omega_D8", trunc24, [](int t) {
    const int tq = std::max(1, whole_powers(t));
    QExpansion image = hecke_T2(omega_Dn(8, (2 * tq - 1) * Q));
    // omega = theta_D8 / Delta, so image / omega = image * Delta / theta_D8.
    QExpansion num = plain(image) * plain(delta((tq + 1) * Q));
    return divide_by_theta_product(num).with_meta(dn_meta(0, 1, 8, full_tag(8)));
  });
}

QExpansion hecke_quotient_A1(int trunc24) {
  return memoized("hecke_quotient_A1", trunc24, [](int t) {
    const int tq = std::max(1, whole_powers(t));
    QExpansion phi = phi_m2_1((2 * tq - 1) * Q);
    QExpansion out = plain(hecke_T2(phi)) / plain(phi);
    return out.with_meta(jacobi_meta(0, 1, {make_rational(1, 2)}, "A1", "O(A1)"));
  });
}

QExpansion phi_0_1_D8(int trunc24) {
  return (Rational(-1) * hecke_quotient_theta_D8(trunc24)).truncated(trunc24);
}

QExpansion psi_0_1_D8(int trunc24) {
  return (Rational(512) * hecke_quotient_omega_D8(trunc24)).truncated(trunc24);
}

QExpansion psi_0_1_D8_differential(int trunc24) {
  return (Rational(2) * modular_diff_H(phi_m2_1_D8(trunc24))).with_meta(dn_meta(0, 1, 8, full_tag(8)));
}

namespace {

// e[n][k] for every 0 <= k <= n <= 8, built variable by variable: appending z_{n+1}
// gives e[n+1][k] = e[n][k] b(z_{n+1}) + e[n][k-1] a(z_{n+1}), and since e[n][*]
// only involves z_1..z_n both products are outer products.
struct Index2Table {
  int trunc24 = -1;
  std::vector<std::vector<QExpansion>> e;
};

std::mutex index2_mutex;

const std::vector<std::vector<QExpansion>>& index2_table(int trunc24) {
  static Index2Table table;
  std::lock_guard<std::mutex> lock(index2_mutex);
  if (table.trunc24 >= trunc24) return table.e;
  const int t = trunc24;
  const QExpansion a = plain(phi_m2_1(t)), b = plain(phi_0_1(t));
  std::vector<std::vector<QExpansion>> e(9);
  e[0] = {QExpansion::constant(0, 1, t)};
  for (std::size_t n = 1; n <= 8; ++n) {
    e[n].resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      QExpansion next(n, t);
      if (k < n) next = outer_product({e[n - 1][k], b}, t);
      if (k > 0) next = next + outer_product({e[n - 1][k - 1], a}, t);
      e[n][k] = next;
    }
  }
  table.trunc24 = t;
  table.e = std::move(e);
  return table.e;
}

}  // namespace

QExpansion phi_index2(int n, int k, int trunc24) {
  check_rank(n, "phi_index2");
  if (k < 0 || k > n) throw std::invalid_argument("phi_index2: k must lie in 0..n");
  return memoized("phi_index2_D" + std::to_string(n) + "_" + std::to_string(k), trunc24, [n, k](int t) {
    QExpansion f = index2_table(t)[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    return f.truncated(t).with_meta(dn_meta(-2 * k, 2, n, full_tag(n)));
  });
}

QExpansion restrict_to_Dn(const QExpansion& a, int n) {
  check_rank(n, "restrict_to_Dn");
  if (a.nvars() < static_cast<std::size_t>(n)) throw std::invalid_argument("restrict_to_Dn: too few variables");
  QExpansion out = a;
  while (out.nvars() > static_cast<std::size_t>(n)) out = restrict_last(out);
  if (out.meta()) {
    JacobiFormMeta m = *out.meta();
    m.lattice = "D" + std::to_string(n);
    if (!m.symmetry.empty()) m.symmetry = m.symmetry.rfind("W(", 0) == 0 ? weyl_tag(n) : full_tag(n);
    out.set_meta(m);
  }
  return out;
}

JacobiFormMeta tower_meta(const std::string& name, int n) {
  check_rank(n, "tower_meta");
  static const std::regex re(R"(phi_(0|-\d+)_([12]))");
  std::smatch m;
  if (name == "omega") return dn_meta(-n, 1, n, weyl_tag(n));
  if (name == "omega_sq") return dn_meta(-2 * n, 2, n, full_tag(n));
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown tower form '" + name + "'");
  const int weight = std::stoi(m[1]);
  const int index = std::stoi(m[2]);
  if (index == 1 && weight != 0 && weight != -2 && weight != -4)
    throw std::invalid_argument("unknown index-1 tower form '" + name + "'");
  if (index == 2 && (weight % 2 != 0 || -weight / 2 > n))
    throw std::invalid_argument("index-2 tower form '" + name + "' needs weight -2k with 0 <= k <= n");
  return dn_meta(weight, index, n, full_tag(n));
}

QExpansion tower_form(const std::string& name, int n, int trunc24) {
  const JacobiFormMeta meta = tower_meta(name, n);
  if (name == "omega") return omega_Dn(n, trunc24);
  if (name == "omega_sq") {
    QExpansion w = omega_Dn(n, trunc24);
    return (w * w).with_meta(meta);
  }
  if (meta.index == 2) return phi_index2(n, -meta.weight2 / 4, trunc24);
  QExpansion d8 = meta.weight2 == 0 ? phi_0_1_D8(trunc24) : meta.weight2 == -4 ? phi_m2_1_D8(trunc24) : phi_m4_1_D8(trunc24);
  return restrict_to_Dn(d8, n);
}

std::vector<std::string> tower_generators(int n) {
  check_rank(n, "tower_generators");
  std::vector<std::string> out = {"phi_0_1", "phi_-2_1", "phi_-4_1"};
  for (int k = 3; k <= n - 1; ++k) out.push_back("phi_-" + std::to_string(2 * k) + "_2");
  if (n >= 3) out.push_back("omega_sq");
  return out;
}

D2Family d2_family(int trunc24) {
  const int t = trunc24;
  const QExpansion a = plain(phi_m2_1(t)), b = plain(phi_0_1(t));
  const QExpansion ab = outer_product({a, b}, t), ba = outer_product({b, a}, t);
  const std::vector<Rational> w_norm = {make_rational(1, 2), make_rational(1, 2)};
  // Exponent vectors transform by (w1, w2) = ((z1+z2)/2, (z1-z2)/2).
  const std::vector<std::vector<Rational>> to_z = {{make_rational(1, 2), make_rational(1, 2)},
                                                   {make_rational(1, 2), make_rational(-1, 2)}};
  auto to_d2 = [&](const QExpansion& w, int weight, const std::string& symmetry) {
    QExpansion z = substitute_linear(w.with_meta(jacobi_meta(weight, 1, w_norm, "2A1")), to_z);
    JacobiFormMeta m = *z.meta();
    m.lattice = "D2";
    m.symmetry = symmetry;
    return z.with_meta(m);
  };
  D2Family f;
  f.phi_m4_1 = to_d2(outer_product({a, a}, t), -4, full_tag(2));
  f.phi_m2_1 = to_d2(ab + ba, -2, full_tag(2));
  f.phi_hat_0_1 = to_d2(outer_product({b, b}, t), 0, full_tag(2));
  f.phi_0_1 = (f.phi_hat_0_1 + Rational(5) * eisenstein_E4(t) * f.phi_m4_1).with_meta(*f.phi_hat_0_1.meta());
  f.omega = to_d2(make_rational(1, 12) * (ab - ba), -2, weyl_tag(2));
  return f;
}

}  // namespace dtower
