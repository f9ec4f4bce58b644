#include "doctest.h"
#include "dtower/blocks.hpp"
#include "dtower/forms.hpp"
#include "dtower/lattice.hpp"
#include "dtower/operators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dtower;
using namespace testing_helpers;

namespace {

constexpr int Q = kQUnit;

LaurentPoly constant(std::size_t n, long c) { return LaurentPoly::constant(n, c); }

QExpansion plain(const QExpansion& a) { return a.with_meta(std::nullopt); }

}  // namespace

TEST_CASE("omega q^0 terms") {
  QExpansion w2 = omega_Dn(2, 2 * Q);
  LaurentPoly lead = mono(2, {1, 1}) - mono(2, {1, -1}) - mono(2, {-1, 1}) + mono(2, {-1, -1});
  CHECK(w2.coeff(0) == lead);
  QExpansion w8 = omega_Dn(8, 2 * Q);
  CHECK(w8.coeff(0) == sum_half(8, 0) - sum_half(8, 1));
  CHECK(w8.valuation24() == 0);
  CHECK(w8.meta()->weight2 == -16);
  CHECK(w8.meta()->index == 1);
  for (int n = 2; n <= 8; ++n) {
    QExpansion w = omega_Dn(n, 3 * Q);
    CHECK(is_invariant(w, {GroupKind::weyl, n}));
    CHECK(is_anti_invariant(w, n));
    CHECK(exponents_in_dual_classes(w));
  }
}

TEST_CASE("theta_D8 is Delta times omega") {
  QExpansion th = theta_D8_product(4 * Q);
  CHECK(th.valuation24() == Q);
  CHECK(plain(th) == plain(delta(4 * Q) * omega_Dn(8, 3 * Q)));
  CHECK(support_check(th, SupportKind::holomorphic));
}

TEST_CASE("E8 theta series") {
  QExpansion e8 = theta_E8(4 * Q);
  QExpansion at_zero = e8;
  while (at_zero.nvars() > 0) at_zero = restrict_last(at_zero);
  CHECK(plain(at_zero) == plain(eisenstein_E4(4 * Q)));
  CHECK(e8.coeff(1).value_at_one() == 240);
  CHECK(e8.coeff(0) == constant(8, 1));
  auto pts = enumerate_lattice_vectors(LatticeKind::e8, 8, 4);
  CHECK(plain(e8.truncated(3 * Q)) == oracles::lattice_theta(pts, 8, 3 * Q));
  CHECK(is_invariant(e8, {GroupKind::weyl, 8}));
  CHECK_FALSE(is_invariant(e8, full_signed_group(8)));
}

TEST_CASE("D16+ theta series restricted to D8") {
  QExpansion d = theta_D16plus_restricted(3 * Q);
  CHECK(d.coeff(0) == constant(8, 1));
  CHECK(d.coeff(1) == sum_pairs(8) + sum_pm1(8, 16) + constant(8, 112));
  CHECK(d.coeff(1).value_at_one() == 480);
  auto pts = enumerate_lattice_vectors(LatticeKind::d16_plus, 16, 4);
  CHECK(plain(d) == oracles::lattice_theta(pts, 8, 3 * Q));
  CHECK(is_invariant(d, full_signed_group(8)));
}

TEST_CASE("index-one D8 generators") {
  QExpansion tilde = phi_tilde_m4_1(3 * Q);
  CHECK(tilde.coeff(0) == constant(8, 128) + sum_pm1(8, -16) + sum_half(8, 0));
  CHECK_FALSE(is_invariant(tilde, full_signed_group(8)));
  QExpansion m4 = phi_m4_1_D8(3 * Q);
  CHECK(m4.coeff(0) == constant(8, 256) + sum_pm1(8, -32) + sum_half(8, -1));
  CHECK(is_invariant(m4, full_signed_group(8)));
  QExpansion m2 = phi_m2_1_D8(3 * Q);
  CHECK(m2.coeff(0) == constant(8, 512) + sum_pm1(8, -16) + sum_half(8, -1, -1));
  QExpansion p0 = phi_0_1_D8(3 * Q);
  CHECK(p0.coeff(0) == constant(8, 8) + sum_pm1(8));
  CHECK(p0.coeff(1) == constant(8, 128) + sum_pm1(8, 36) + sum_pairs(8, 8) + sum_half(8, -1, -8) + sum_triples(8));
  QExpansion psi = psi_0_1_D8(3 * Q);
  CHECK(psi.coeff(0) == constant(8, 512) + sum_half(8, -1));
  for (const QExpansion* f : {&m4, &m2, &p0, &psi}) {
    CHECK(is_invariant(*f, full_signed_group(8)));
    CHECK(exponents_in_dual_classes(*f));
    CHECK(support_check(*f, SupportKind::weak));
    CHECK(f->meta()->index == 1);
  }
  CHECK(m2.meta()->weight2 == -4);
  CHECK(p0.meta()->weight2 == 0);
}

TEST_CASE("psi relations") {
  const int t = 3 * Q;
  QExpansion psi = psi_0_1_D8(t);
  CHECK(psi == psi_0_1_D8_differential(t));
  QExpansion lhs = psi - eisenstein_E4(t) * phi_m4_1_D8(t);
  CHECK(plain(lhs) == plain(Rational(32) * phi_0_1_D8(t)));
}

TEST_CASE("Hecke quotients with unit prefactor") {
  // Under the three-term T_-(2) the quotients come out as fixed multiples of
  // the displayed generators.
  CHECK(hecke_quotient_theta_D8(2 * Q).coeff(0) == constant(8, -8) + sum_pm1(8, -1));
  CHECK(hecke_quotient_omega_D8(2 * Q).coeff(0) * Rational(512) == constant(8, 512) + sum_half(8, -1));
  QExpansion a1 = hecke_quotient_A1(4 * Q);
  CHECK(plain(Rational(8) * a1) == plain(phi_0_1(4 * Q)));
}

TEST_CASE("Hecke rule matches the three-term oracle on omega") {
  QExpansion w = omega_Dn(8, 5 * Q);
  QExpansion rule = hecke_T2(w);
  QExpansion oracle = oracles::hecke_three_term(w);
  const int t = std::min(rule.trunc24(), oracle.trunc24());
  CHECK(t >= 2 * Q);
  CHECK(plain(rule.truncated(t)) == plain(oracle.truncated(t)));
}

TEST_CASE("index-two family") {
  QExpansion f = phi_index2(2, 1, 2 * Q);
  CHECK(f.coeff(0) == sum_pairs(2, 2) + sum_pm1(2, 8) + constant(2, -40));
  CHECK(f.meta()->weight2 == -4);
  CHECK(f.meta()->index == 2);
  // The symmetric-function expansion agrees with the explicit two-term sum.
  QExpansion a = plain(phi_m2_1(2 * Q)), b = plain(phi_0_1(2 * Q));
  CHECK(plain(f) == outer_product({a, b}, 2 * Q) + outer_product({b, a}, 2 * Q));
  for (int n = 3; n <= 6; ++n) {
    for (int k = 0; k <= n - 1; ++k) {
      QExpansion top = phi_index2(n, k, 2 * Q);
      CHECK(plain(restrict_last(top)) == plain(Rational(12) * phi_index2(n - 1, k, 2 * Q)));
    }
    QExpansion w = omega_Dn(n - 1, 2 * Q);
    CHECK(plain(restrict_last(phi_index2(n, n - 1, 2 * Q))) == plain(Rational(12) * w * w));
    CHECK(is_invariant(phi_index2(n, 2, 2 * Q), full_signed_group(n)));
  }
  CHECK(restrict_last(phi_index2(4, 4, 2 * Q)).is_zero());
  CHECK_THROWS_AS(phi_index2(3, 4, Q), std::invalid_argument);
}

TEST_CASE("tower forms") {
  QExpansion p7 = tower_form("phi_0_1", 7, 2 * Q);
  CHECK(p7.nvars() == 7);
  CHECK(p7.meta()->lattice == "D7");
  CHECK(p7.meta()->symmetry == "O(D7)");
  // Restricting z8 then z7 or z7 then z8 gives the same D6 form.
  QExpansion d8 = phi_0_1_D8(2 * Q);
  QExpansion swapped = act(SignedPermutation::transposition(8, 6, 7), d8);
  CHECK(restrict_last(restrict_last(swapped)) == restrict_last(restrict_last(d8)));
  CHECK(tower_form("phi_-4_1", 4, 2 * Q).meta()->symmetry == "O'(D4)");
  CHECK(tower_generators(2).size() == 3);
  CHECK(tower_generators(3).size() == 4);
  CHECK(tower_generators(8).size() == 9);
  CHECK(tower_meta("phi_-10_2", 8).weight2 == -20);
  CHECK_THROWS_AS(tower_meta("phi_-6_1", 5), std::invalid_argument);
  CHECK_THROWS_AS(tower_meta("phi_-10_2", 4), std::invalid_argument);
  for (int n = 2; n <= 8; ++n)
    for (const auto& name : tower_generators(n)) {
      QExpansion g = tower_form(name, n, 2 * Q);
      CHECK(is_invariant(g, full_signed_group(n)));
      CHECK(exponents_in_dual_classes(g));
      CHECK(*g.meta() == tower_meta(name, n));
    }
}

TEST_CASE("D2 family") {
  const int t = 3 * Q;
  D2Family f = d2_family(t);
  // Expansions of the factored products.
  CHECK(f.phi_m4_1.coeff(0) == constant(2, 4) + sum_pm1(2) + sum_half(2, -1, -2));
  CHECK(f.phi_m2_1.coeff(0) == constant(2, -40) + sum_pm1(2, 2) + sum_half(2, -1, 8));
  CHECK(f.phi_hat_0_1.coeff(0) == constant(2, 100) + sum_pm1(2) + sum_half(2, -1, 10));
  CHECK(f.omega.coeff(0) == sum_half(2, 0) - sum_half(2, 1));
  CHECK(f.phi_m4_1.meta()->norm_form == std::vector<Rational>{1, 1});
  // Restrictions of the D8 generators.
  CHECK(plain(f.phi_m4_1) == plain(make_rational(-1, 32) * restrict_to_Dn(phi_m4_1_D8(t), 2)));
  CHECK(plain(f.phi_m2_1) == plain(make_rational(-1, 8) * restrict_to_Dn(phi_m2_1_D8(t), 2)));
  CHECK(plain(f.phi_0_1) == plain(Rational(6) * restrict_to_Dn(phi_0_1_D8(t), 2)));
  CHECK(plain(f.omega) == plain(omega_Dn(2, t)));
  // The quadratic relation for omega^2 that the products actually satisfy.
  QExpansion e4 = eisenstein_E4(t);
  QExpansion rhs = f.phi_m2_1 * f.phi_m2_1 - Rational(4) * f.phi_0_1 * f.phi_m4_1 +
                   Rational(20) * e4 * f.phi_m4_1 * f.phi_m4_1;
  CHECK(plain(Rational(144) * f.omega * f.omega) == plain(rhs));
  CHECK(is_invariant(f.phi_0_1, full_signed_group(2)));
  CHECK(is_anti_invariant(f.omega, 2));
}
