#include <random>

#include "doctest.h"
#include "dtower/blocks.hpp"
#include "dtower/qexpansion.hpp"
#include "helpers.hpp"

using namespace dtower;
using namespace testing_helpers;

namespace {

constexpr int Q = kQUnit;

QExpansion random_series(std::mt19937& rng, std::size_t n, int trunc, int val = 0) {
  QExpansion out(n, trunc);
  for (int e = val; e < trunc; e += Q) out.add_term(e, random_poly(rng, n, 3, 2));
  return out;
}

}  // namespace

TEST_CASE("products of modular forms") {
  QExpansion e4 = eisenstein_E4(2 * Q);
  QExpansion sq = e4 * e4;
  CHECK(sq.trunc24() == 2 * Q);
  CHECK(sq.coeff(0) == LaurentPoly::constant(0, 1));
  CHECK(sq.coeff(1) == LaurentPoly::constant(0, 480));
  CHECK(sq.meta()->weight2 == 16);
  QExpansion one = QExpansion::constant(0, 1, 5 * Q).with_meta(modular_meta(0));
  CHECK(e4 * one == e4);
  QExpansion d = eta(6 * Q) * eta_power(23, 6 * Q);
  CHECK(d.valuation24() == Q);
  CHECK(d.truncated(6 * Q) == delta(6 * Q));
}

TEST_CASE("truncation bookkeeping") {
  QExpansion a(1, 3 * Q), b(1, 5 * Q);
  a.add_term(Q, LaurentPoly::constant(1, 1));
  b.add_term(0, LaurentPoly::constant(1, 2));
  CHECK((a + b).trunc24() == 3 * Q);
  CHECK((a * b).trunc24() == std::min(3 * Q + 0, 5 * Q + Q));
  CHECK_THROWS_AS(a.coeff(5), PrecisionError);
  CHECK_THROWS_AS(a.coeff(3), PrecisionError);
  CHECK(a.coeff(2).is_zero());
  QExpansion empty(2, 4 * Q);
  CHECK(empty.valuation24() == 4 * Q);
  QExpansion x(1, Q), y(2, Q);
  CHECK_THROWS_AS(x + y, std::invalid_argument);
}

TEST_CASE("division") {
  QExpansion d = delta(6 * Q);
  QExpansion th = theta_odd(4 * Q);
  QExpansion quotient = (d * th) / d;
  CHECK(quotient == th.truncated(quotient.trunc24()));
  CHECK(quotient.trunc24() >= 3 * Q);
  QExpansion one = th / th;
  CHECK(one.coeff(0) == LaurentPoly::constant(1, 1));
  for (const auto& [e, p] : one.coefficients()) CHECK(e == 0);
  QExpansion zero(1, 3 * Q);
  CHECK_THROWS_AS(th / zero, std::domain_error);
  // (zeta - 2 + zeta^-1) / (zeta^{1/2} + zeta^{-1/2}) does not divide.
  QExpansion num = QExpansion::constant(1, 0, 2 * Q), den = QExpansion::constant(1, 0, 2 * Q);
  num.add_term(0, poly1({{2, 1}, {0, -2}, {-2, 1}}));
  den.add_term(0, poly1({{1, 1}, {-1, 1}}));
  CHECK_THROWS_AS(num / den, InexactDivision);
}

TEST_CASE("coefficient access of the odd theta function") {
  QExpansion th = theta_odd(2 * Q);
  CHECK(th.coefficient(3) == poly1({{1, 1}, {-1, -1}}));
  CHECK(th.coefficient(27) == poly1({{3, -1}, {-3, 1}}));
  CHECK(th.coefficient(4).is_zero());
}

TEST_CASE("support predicates") {
  QExpansion phi = phi_m2_1(3 * Q);
  CHECK(support_check(phi, SupportKind::weak));
  CHECK_FALSE(support_check(phi, SupportKind::holomorphic));
  QExpansion th = theta_odd(6 * Q);
  CHECK(support_check(th, SupportKind::holomorphic));
  CHECK_FALSE(support_check(th, SupportKind::cusp));
  QExpansion bare(1, Q);
  CHECK_THROWS_AS(support_check(bare, SupportKind::weak), MetaError);
}

TEST_CASE("restriction and rescaling") {
  QExpansion c = QExpansion::constant(2, 7, 3 * Q);
  CHECK(restrict_last(c) == QExpansion::constant(1, 7, 3 * Q));
  QExpansion s(1, 3 * Q);
  s.add_term(Q, LaurentPoly::term(1, {2}));
  QExpansion r = rescale_tau(s, 2);
  CHECK(r.trunc24() == 6 * Q);
  CHECK(r.coeff(2) == LaurentPoly::term(1, {4}));
  QExpansion phi2 = rescale_tau(phi_m2_1(Q), 2);
  CHECK(phi2.coeff(0) == poly1({{4, 1}, {0, -2}, {-4, 1}}));
  CHECK_THROWS_AS(restrict_last(QExpansion(0, Q)), std::invalid_argument);
}

TEST_CASE("meta ledger") {
  QExpansion e4 = eisenstein_E4(3 * Q), e6 = eisenstein_E6(3 * Q);
  CHECK((e4 * e6).meta()->weight2 == 20);
  CHECK((e6 / e4).meta()->weight2 == 4);
  CHECK_THROWS_AS(e4 + e6, MetaError);
  QExpansion p = phi_m2_1(3 * Q);
  QExpansion prod = e4 * p;
  CHECK(prod.meta()->weight2 == 4);
  CHECK(prod.meta()->index == 1);
  CHECK(prod.meta()->norm_form == std::vector<Rational>{make_rational(1, 2)});
  CHECK((p * p).meta()->index == 2);
}

TEST_CASE("norm form pullback under the D2 coordinate change") {
  QExpansion w(2, Q);
  w.add_term(0, LaurentPoly::term(2, {2, 0}));
  w.set_meta(jacobi_meta(0, 1, {make_rational(1, 2), make_rational(1, 2)}, "2A1"));
  std::vector<std::vector<Rational>> to_z = {{make_rational(1, 2), make_rational(1, 2)},
                                             {make_rational(1, 2), make_rational(-1, 2)}};
  QExpansion z = substitute_linear(w, to_z);
  CHECK(z.meta()->norm_form == std::vector<Rational>{1, 1});
  CHECK(z.coeff(0) == LaurentPoly::term(2, {1, 1}));
  std::vector<std::vector<Rational>> shear = {{1, 1}, {0, 1}};
  CHECK_THROWS_AS(substitute_linear(w, shear), MetaError);
}

TEST_CASE("precision soundness on random series") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 30; ++iter) {
    QExpansion a = random_series(rng, 2, 6 * Q), b = random_series(rng, 2, 6 * Q, Q);
    const int t = 3 * Q;
    QExpansion at = a.truncated(t), bt = b.truncated(t);
    QExpansion prod_hi = a * b, prod_lo = at * bt;
    CHECK(prod_hi.truncated(prod_lo.trunc24()) == prod_lo);
    QExpansion sum_hi = a + b, sum_lo = at + bt;
    CHECK(sum_hi.truncated(sum_lo.trunc24()) == sum_lo);
    // restriction commutes with + and *
    CHECK(restrict_last(a * b) == restrict_last(a) * restrict_last(b));
    CHECK(restrict_last(a + b) == restrict_last(a) + restrict_last(b));
  }
}

TEST_CASE("division round trip on random series") {
  std::mt19937 rng(4242);
  for (int iter = 0; iter < 20; ++iter) {
    QExpansion a = random_series(rng, 2, 5 * Q), b = random_series(rng, 1, 5 * Q, Q);
    if (b.is_zero()) continue;
    QExpansion bb = embed(b, 2, {1});
    QExpansion q = (a * bb) / bb;
    CHECK(q == a.truncated(q.trunc24()));
  }
}

TEST_CASE("outer products match embedded products") {
  QExpansion th = theta_odd(4 * Q), t3 = theta_char(ThetaChar::t3, 4 * Q);
  QExpansion outer = outer_product({th, t3, th}, 4 * Q);
  QExpansion direct = embed(th, 3, {0}) * embed(t3, 3, {1}) * embed(th, 3, {2});
  CHECK(outer == direct.truncated(outer.trunc24()));
  CHECK(outer.trunc24() == 4 * Q);
}
