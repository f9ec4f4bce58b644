#include "dtower/suites.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dtower/blocks.hpp"
#include "dtower/forms.hpp"
#include "dtower/lattice.hpp"
#include "dtower/operators.hpp"
#include "dtower/relations.hpp"

namespace dtower {

namespace {

constexpr int Q = kQUnit;

using Check = std::function<CheckResult()>;

struct Builder {
  std::string suite;
  int prec;
  int t;  // trunc24 = (prec + 1) Q
  std::vector<Check> checks;

  void add(std::string name, std::function<std::pair<bool, std::string>()> body) {
    checks.push_back([suite = suite, name = std::move(name), body = std::move(body)] {
      CheckResult r{suite, name, false, {}};
      try {
        auto [ok, detail] = body();
        r.passed = ok;
        r.detail = std::move(detail);
      } catch (const std::exception& e) {
        r.detail = std::string("error: ") + e.what();
      }
      return r;
    });
  }

  /// lhs = rhs below trunc t (metas ignored).
  void identity(std::string name, std::function<std::pair<QExpansion, QExpansion>()> sides) {
    const int need = t;
    add(std::move(name), [need, sides = std::move(sides)]() -> std::pair<bool, std::string> {
      auto [lhs, rhs] = sides();
      IdentityReport r = check_identity(lhs.with_meta(std::nullopt), rhs.with_meta(std::nullopt));
      if (r.compared_trunc24 < need)
        return {false, "only compared below " + q_power_string(r.compared_trunc24)};
      if (!r.equal) return {false, r.to_string(lhs.nvars())};
      return {true, {}};
    });
  }

  /// The q^(q24/24) coefficient of a equals want.
  void coefficient(std::string name, std::function<QExpansion()> form, int q24, std::function<LaurentPoly()> want) {
    add(std::move(name), [form = std::move(form), q24, want = std::move(want)]() -> std::pair<bool, std::string> {
      LaurentPoly got = form().coefficient(q24);
      if (got == want()) return {true, {}};
      return {false, "got " + to_string(got)};
    });
  }
};

QExpansion plain(const QExpansion& a) { return a.with_meta(std::nullopt); }

// Orbit sums in n variables: v(+-1) = sum zeta_j^{+-1}, pairs and triples of
// +-1 entries, and the half-vectors (all, even or odd number of minus signs).
LaurentPoly v1(int n, const Rational& c = 1) {
  std::vector<int> e(n, 0);
  e[0] = 2;
  return orbit_sum(e) * c;
}
LaurentPoly pairs(int n, const Rational& c = 1) {
  std::vector<int> e(n, 0);
  e[0] = e[1] = 2;
  return orbit_sum(e) * c;
}
LaurentPoly triples(int n, const Rational& c = 1) {
  std::vector<int> e(n, 0);
  e[0] = e[1] = e[2] = 2;
  return orbit_sum(e) * c;
}
LaurentPoly halves(int n, const Rational& c = 1) { return orbit_sum(std::vector<int>(n, 1)) * c; }
LaurentPoly halves_even(int n, const Rational& c = 1) { return orbit_sum(std::vector<int>(n, 1), true) * c; }
LaurentPoly cst(int n, const Rational& c) { return LaurentPoly::constant(static_cast<std::size_t>(n), c); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// ---- suites ----------------------------------------------------------------

void blocks_suite(Builder& b) {
  const int t = b.t;
  b.identity("E4 = 1 + 240 sum sigma_3(n) q^n", [t] {
    QExpansion ref = QExpansion::constant(0, 1, t);
    for (int n = 1; n * Q < t; ++n) ref.add_term(n * Q, LaurentPoly::constant(0, make_rational(240 * divisor_sigma(3, n))));
    return std::pair{eisenstein_E4(t), ref};
  });
  b.identity("E6 = 1 - 504 sum sigma_5(n) q^n", [t] {
    QExpansion ref = QExpansion::constant(0, 1, t);
    for (int n = 1; n * Q < t; ++n) ref.add_term(n * Q, LaurentPoly::constant(0, make_rational(-504 * divisor_sigma(5, n))));
    return std::pair{eisenstein_E6(t), ref};
  });
  b.identity("E4^3 - E6^2 = 1728 Delta", [t] {
    QExpansion e4 = eisenstein_E4(t), e6 = eisenstein_E6(t);
    return std::pair{e4 * e4 * e4 - e6 * e6, Rational(1728) * delta(t)};
  });
  b.identity("odd theta: series = Jacobi triple product", [t] { return std::pair{theta_odd(t), theta_odd_product(t)}; });
  b.identity("phi_{-2,1} = theta^2 / eta^6", [t] {
    QExpansion th = theta_odd(t + Q);
    return std::pair{phi_m2_1(t), (th * th) / eta_power(6, t + Q)};
  });
  b.coefficient("phi_{0,1} at q^0 is zeta + 10 + zeta^-1", [t] { return phi_0_1(t); }, 0,
                [] { return v1(1) + cst(1, 10); });
  b.coefficient("phi_{-2,1} at q^0 is zeta - 2 + zeta^-1", [t] { return phi_m2_1(t); }, 0,
                [] { return v1(1) + cst(1, -2); });
  b.identity("H(phi_{-2,1}) = -(1/24) phi_{0,1} with norm form [1/2]",
             [t] { return std::pair{modular_diff_H(phi_m2_1(t)), make_rational(-1, 24) * phi_0_1(t)}; });
  b.coefficient("H(phi_{0,1}) at q^0 is -5/24 zeta + 10/24 - 5/24 zeta^-1",
                [t] { return modular_diff_H(phi_0_1(t)); }, 0,
                [] { return v1(1, make_rational(-5, 24)) + cst(1, make_rational(10, 24)); });
  b.identity("H(H(phi_{-2,1})) = (5/576) E4 phi_{-2,1}", [t] {
    QExpansion phi = phi_m2_1(t);
    return std::pair{modular_diff_H(modular_diff_H(phi)), make_rational(5, 576) * eisenstein_E4(t) * phi};
  });
  b.identity("8 (phi_{-2,1}|T_-(2)) / phi_{-2,1} = phi_{0,1}",
             [t] { return std::pair{Rational(8) * hecke_quotient_A1(t), phi_0_1(t)}; });
}

void invariance_suite(Builder& b) {
  const int t = b.t;
  for (int n = 2; n <= 8; ++n) {
    for (const auto& g : tower_generators(n)) {
      const GroupTag group = full_signed_group(n);
      b.add(g + " of D" + std::to_string(n) + " is " + group.to_string() + "-invariant",
            [g, n, t, group]() -> std::pair<bool, std::string> {
              QExpansion f = tower_form(g, n, t);
              if (!is_invariant(f, group)) return {false, "not invariant"};
              if (!exponents_in_dual_classes(f)) return {false, "exponents outside the dual lattice classes"};
              return {true, {}};
            });
    }
    b.add("omega of D" + std::to_string(n) + " is W-invariant and odd under one sign change",
          [n, t]() -> std::pair<bool, std::string> {
            QExpansion w = omega_Dn(n, t);
            if (!is_invariant(w, {GroupKind::weyl, n})) return {false, "not W-invariant"};
            if (!is_anti_invariant(w, n)) return {false, "not anti-invariant"};
            return {true, {}};
          });
  }
}

void tower_suite(Builder& b) {
  const int t = b.t;
  b.coefficient("phi_{0,1} of D8 at q^0 is 8 + v", [t] { return phi_0_1_D8(t); }, 0,
                [] { return cst(8, 8) + v1(8); });
  b.coefficient("phi_{0,1} of D8 at q^1 is 128 + 36 v + 8 pairs - 8 halves + triples",
                [t] { return phi_0_1_D8(std::max(t, 2 * Q)); }, Q,
                [] { return cst(8, 128) + v1(8, 36) + pairs(8, 8) + halves(8, -8) + triples(8); });
  b.coefficient("psi_{0,1} of D8 at q^0 is 512 + halves", [t] { return psi_0_1_D8(t); }, 0,
                [] { return cst(8, 512) + halves(8); });
  b.coefficient("phi_{-4,1} of D8 at q^0 is 256 - 32 v + halves", [t] { return phi_m4_1_D8(t); }, 0,
                [] { return cst(8, 256) + v1(8, -32) + halves(8); });
  b.coefficient("phi_{-2,1} of D8 at q^0 is 512 - 16 v - halves", [t] { return phi_m2_1_D8(t); }, 0,
                [] { return cst(8, 512) + v1(8, -16) + halves(8, -1); });
  b.coefficient("phi-tilde_{-4,1} of D8 at q^0 is 128 - 16 v + even halves", [t] { return phi_tilde_m4_1(t); }, 0,
                [] { return cst(8, 128) + v1(8, -16) + halves_even(8); });
  b.identity("theta_D8 = Delta omega", [t] { return std::pair{theta_D8_product(t), delta(t) * omega_Dn(8, t)}; });
  b.identity("3 H(phi_{-4,1}) = phi_{-2,1}",
             [t] { return std::pair{Rational(3) * modular_diff_H(phi_m4_1_D8(t)), phi_m2_1_D8(t)}; });
  b.identity("2 H(phi_{-2,1}) - E4 phi_{-4,1} = 32 phi_{0,1}", [t] {
    return std::pair{Rational(2) * modular_diff_H(phi_m2_1_D8(t)) - eisenstein_E4(t) * phi_m4_1_D8(t),
                     Rational(32) * phi_0_1_D8(t)};
  });
  b.identity("psi_{0,1}: 512 (omega|T_-(2)) / omega = 2 H(phi_{-2,1})",
             [t] { return std::pair{psi_0_1_D8(t), Rational(2) * modular_diff_H(phi_m2_1_D8(t))}; });
  b.identity("psi_{0,1} - E4 phi_{-4,1} = 32 phi_{0,1}", [t] {
    return std::pair{psi_0_1_D8(t) - eisenstein_E4(t) * phi_m4_1_D8(t), Rational(32) * phi_0_1_D8(t)};
  });
  b.identity("phi_{0,1} = -(theta_D8|T_-(2)) / theta_D8",
             [t] { return std::pair{phi_0_1_D8(t), -hecke_quotient_theta_D8(t)}; });
  for (int n = 3; n <= 8; ++n) {
    for (int k = 0; k <= n - 1; ++k)
      b.identity("phi_{-" + std::to_string(2 * k) + ",2} of D" + std::to_string(n) + " at z_" + std::to_string(n) +
                     " = 0 is 12 phi_{-" + std::to_string(2 * k) + ",2} of D" + std::to_string(n - 1),
                 [n, k, t] {
                   return std::pair{restrict_last(phi_index2(n, k, t)), Rational(12) * phi_index2(n - 1, k, t)};
                 });
    b.identity("phi_{-" + std::to_string(2 * (n - 1)) + ",2} of D" + std::to_string(n) + " at z_" + std::to_string(n) +
                   " = 0 is 12 omega^2 of D" + std::to_string(n - 1),
               [n, t] {
                 QExpansion w = omega_Dn(n - 1, t);
                 return std::pair{restrict_last(phi_index2(n, n - 1, t)), Rational(12) * w * w};
               });
  }
}

void d2_suite(Builder& b) {
  const int t = b.t;
  b.coefficient("phi_{-4,1} of D2 at q^0 is 4 + v - 2 halves", [t] { return d2_family(t).phi_m4_1; }, 0,
                [] { return cst(2, 4) + v1(2) + halves(2, -2); });
  b.coefficient("phi_{-2,1} of D2 at q^0 is -40 + 2 v + 8 halves", [t] { return d2_family(t).phi_m2_1; }, 0,
                [] { return cst(2, -40) + v1(2, 2) + halves(2, 8); });
  b.coefficient("phi-hat_{0,1} of D2 at q^0 is 100 + v + 10 halves", [t] { return d2_family(t).phi_hat_0_1; }, 0,
                [] { return cst(2, 100) + v1(2) + halves(2, 10); });
  b.identity("phi_{-4,1} of D2 = -(1/32) phi_{-4,1} of D8 restricted", [t] {
    return std::pair{d2_family(t).phi_m4_1, make_rational(-1, 32) * restrict_to_Dn(phi_m4_1_D8(t), 2)};
  });
  b.identity("phi_{-2,1} of D2 = -(1/8) phi_{-2,1} of D8 restricted", [t] {
    return std::pair{d2_family(t).phi_m2_1, make_rational(-1, 8) * restrict_to_Dn(phi_m2_1_D8(t), 2)};
  });
  b.identity("phi_{0,1} of D2 = 6 phi_{0,1} of D8 restricted",
             [t] { return std::pair{d2_family(t).phi_0_1, Rational(6) * restrict_to_Dn(phi_0_1_D8(t), 2)}; });
  b.identity("omega of D2 from w-coordinates = theta(z1) theta(z2) / eta^6",
             [t] { return std::pair{d2_family(t).omega, omega_Dn(2, t)}; });
  b.identity("144 omega^2 = phi_{-2,1}^2 - 4 phi_{0,1} phi_{-4,1} + 20 E4 phi_{-4,1}^2 on D2", [t] {
    D2Family f = d2_family(t);
    return std::pair{Rational(144) * f.omega * f.omega,
                     f.phi_m2_1 * f.phi_m2_1 - Rational(4) * f.phi_0_1 * f.phi_m4_1 +
                         Rational(20) * eisenstein_E4(t) * f.phi_m4_1 * f.phi_m4_1};
  });
}

void mde_suite(Builder& b) {
  const int t = b.t;
  b.identity("3 H(phi_{-4,1}) = phi_{-2,1} on D8",
             [t] { return std::pair{Rational(3) * modular_diff_H(phi_m4_1_D8(t)), phi_m2_1_D8(t)}; });
  b.identity("2 H(phi_{-2,1}) - E4 phi_{-4,1} = 32 phi_{0,1} on D8", [t] {
    return std::pair{Rational(2) * modular_diff_H(phi_m2_1_D8(t)) - eisenstein_E4(t) * phi_m4_1_D8(t),
                     Rational(32) * phi_0_1_D8(t)};
  });
  b.add("E6 phi_{-4,1} + E4 phi_{-2,1} - c H(phi_{0,1}) = 0 has a unique c", [t]() -> std::pair<bool, std::string> {
    NamedForms f = mde_d8_index1_forms(t);
    SolutionSpace s = solve_relation({f.forms, f.labels, {}, true});
    if (s.dimension() != 1) return {false, "solution space has dimension " + std::to_string(s.dimension())};
    const auto& v = s.basis[0];
    if (v[0] == 0 || v[0] != v[1]) return {false, "unexpected relation " + s.to_string()};
    const Rational c = -v[2] / v[0];
    return {s.full_vanishing, "c = " + to_string(c)};
  });
  b.add("weight-8 relations for phi_{0,1} of D8 from the q^0 term alone", [t]() -> std::pair<bool, std::string> {
    NamedForms f = mde_d8_weight8_forms(std::max(t, 2 * Q));
    SolutionSpace s = solve_relation({f.forms, f.labels, {0}, true});
    if (s.dimension() != 5) return {false, "solution space has dimension " + std::to_string(s.dimension())};
    if (!s.full_vanishing) return {false, "some q^0 solution does not vanish at higher order"};
    SolutionSpace named = s;
    for (std::size_t i = 0; i < named.labels.size(); ++i) named.labels[i] = "a" + std::to_string(i + 1);
    return {true, "q^1 and higher vanish unconstrained; " + join(dependent_formulas(named, 5), ", ")};
  });
  b.add("weight-6 relations for phi_{0,1} of A1", [t]() -> std::pair<bool, std::string> {
    NamedForms f = mde_a1_weight6_forms(std::max(t, 3 * Q));
    SolutionSpace s = solve_relation({f.forms, f.labels, {}, true});
    if (s.dimension() != 2) return {false, "solution space has dimension " + std::to_string(s.dimension())};
    return {s.full_vanishing, join(s.formulas(), ", ")};
  });
  b.identity("H(H(phi_{-2,1})) = (5/576) E4 phi_{-2,1} on A1", [t] {
    QExpansion phi = phi_m2_1(t);
    return std::pair{modular_diff_H(modular_diff_H(phi)), make_rational(5, 576) * eisenstein_E4(t) * phi};
  });
}

void independence_suite(Builder& b) {
  const int t = b.t;
  for (int n : {2, 3, 4})
    for (int index : {0, 1, 2})
      for (int weight = -16; weight <= 12; weight += 2) {
        if (generator_monomials(n, weight, index).empty()) continue;
        b.add("generator monomials of D" + std::to_string(n) + ", weight " + std::to_string(weight) + ", index " +
                  std::to_string(index) + " are independent",
              [n, weight, index, t]() -> std::pair<bool, std::string> {
                RankCertificate c = independence_rank(n, weight, index, t);
                return {c.full_rank(), "rank " + std::to_string(c.rank) + " of " + std::to_string(c.expected)};
              });
      }
  b.add("theta_E8 and theta_D8 are independent", [t]() -> std::pair<bool, std::string> {
    const std::size_t r = rank_of({theta_E8(t), theta_D8_product(t)});
    return {r == 2, "rank " + std::to_string(r)};
  });
}

void hecke_oracle_suite(Builder& b) {
  const int t = b.t;
  auto compare = [t](const QExpansion& a) -> std::pair<bool, std::string> {
    QExpansion rule = hecke_T2(a), direct = hecke_T2_three_term(a);
    const int common = std::min(rule.trunc24(), direct.trunc24());
    if (common < t) return {false, "only compared below " + q_power_string(common)};
    IdentityReport r = check_identity(plain(rule.truncated(common)), plain(direct.truncated(common)));
    return {r.equal, r.equal ? std::string{} : r.to_string(a.nvars())};
  };
  b.add("T_-(2) coefficient rule = three-term average on phi_{-2,1}",
        [t, compare] { return compare(phi_m2_1(2 * t)); });
  b.add("T_-(2) coefficient rule = three-term average on phi_{0,1}",
        [t, compare] { return compare(phi_0_1(2 * t)); });
  b.add("T_-(2) coefficient rule = three-term average on omega of D8",
        [t, compare] { return compare(omega_Dn(8, 2 * t)); });
}

void theta_oracle_suite(Builder& b) {
  // Lattice enumeration grows quickly; it is cross-checked through q^2.
  const int te = std::min(b.t, 3 * Q);
  const int t = b.t;
  b.identity("theta_E8 at z = 0 is E4", [t] {
    QExpansion e8 = theta_E8(t);
    while (e8.nvars() > 0) e8 = restrict_last(e8);
    return std::pair{e8, eisenstein_E4(t)};
  });
  b.add("theta_E8 from coset theta products = lattice enumeration", [te]() -> std::pair<bool, std::string> {
    auto pts = enumerate_lattice_vectors(LatticeKind::e8, 8, make_rational(2 * (te / Q - 1), 1));
    IdentityReport r = check_identity(plain(theta_E8(te)), lattice_theta_series(pts, 8, te));
    return {r.equal, r.equal ? std::to_string(pts.size()) + " vectors" : r.to_string(8)};
  });
  b.add("theta_D16+ restricted to D8 = lattice enumeration", [te]() -> std::pair<bool, std::string> {
    auto pts = enumerate_lattice_vectors(LatticeKind::d16_plus, 16, make_rational(2 * (te / Q - 1), 1));
    IdentityReport r = check_identity(plain(theta_D16plus_restricted(te)), lattice_theta_series(pts, 8, te));
    return {r.equal, r.equal ? std::to_string(pts.size()) + " vectors" : r.to_string(8)};
  });
  b.coefficient("theta_D16+ restricted to D8 at q^1 is 112 + 16 v + pairs",
                [t] { return theta_D16plus_restricted(std::max(t, 2 * Q)); }, Q,
                [] { return cst(8, 112) + v1(8, 16) + pairs(8); });
  b.add("theta_D16+ at z = 0 has q^1 coefficient 480", [t]() -> std::pair<bool, std::string> {
    const Rational v = theta_D16plus_restricted(std::max(t, 2 * Q)).coeff(1).value_at_one();
    return {v == 480, "got " + to_string(v)};
  });
}

using SuiteFn = void (*)(Builder&);

const std::vector<std::pair<std::string, SuiteFn>>& table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t = {
      {"blocks", blocks_suite},     {"invariance", invariance_suite},     {"tower", tower_suite},
      {"d2", d2_suite},             {"mde", mde_suite},                   {"independence", independence_suite},
      {"hecke-oracle", hecke_oracle_suite}, {"theta-oracle", theta_oracle_suite},
  };
  return t;
}

std::vector<CheckResult> run_parallel(const std::vector<Check>& checks, unsigned threads) {
  std::vector<CheckResult> out(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) out[i] = checks[i]();
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, checks.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

std::string SuiteReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << "\n";
    if (!c.detail.empty()) os << "     " << c.detail << "\n";
  }
  os << checks.size() - failures() << "/" << checks.size() << " checks passed through q^" << prec << "\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : table()) v.push_back(name);
    return v;
  }();
  return names;
}

SuiteReport run_suite(const std::string& suite, int prec, unsigned threads) {
  if (prec < 0) throw std::invalid_argument("run_suite: prec must be >= 0");
  std::vector<Check> checks;
  bool known = false;
  for (const auto& [name, fn] : table()) {
    if (suite != "all" && suite != name) continue;
    known = true;
    Builder b{name, prec, (prec + 1) * Q, {}};
    fn(b);
    for (auto& c : b.checks) checks.push_back(std::move(c));
  }
  if (!known) throw std::invalid_argument("unknown suite '" + suite + "'");
  return SuiteReport{suite, prec, run_parallel(checks, threads)};
}

}  // namespace dtower
