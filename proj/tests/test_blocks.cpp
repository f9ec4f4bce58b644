#include "doctest.h"
#include "dtower/blocks.hpp"
#include "dtower/operators.hpp"
#include "helpers.hpp"

using namespace dtower;
using namespace testing_helpers;

namespace {

constexpr int Q = kQUnit;

// Euler's pentagonal number theorem: prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}.
std::vector<long> pentagonal(int len) {
  std::vector<long> c(static_cast<std::size_t>(len), 0);
  for (int k = -len; k <= len; ++k) {
    const int e = k * (3 * k - 1) / 2;
    if (e >= 0 && e < len) c[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
  }
  return c;
}

Rational scalar(const QExpansion& a, int q24) { return a.coefficient(q24).value_at_one(); }

}  // namespace

TEST_CASE("eta matches the pentagonal number theorem") {
  QExpansion e = eta(21 * Q);
  auto c = pentagonal(21);
  for (int n = 0; n <= 20; ++n) CHECK(scalar(e, 1 + Q * n) == c[static_cast<std::size_t>(n)]);
  CHECK(scalar(e, 1) == 1);
  CHECK(scalar(e, 1 + Q) == -1);
  CHECK(scalar(e, 1 + 2 * Q) == -1);
  CHECK(scalar(e, 1 + 5 * Q) == 1);
  CHECK(scalar(e, 1 + 7 * Q) == 1);
  CHECK(eta(6 * Q + 1).truncated(3 * Q) == eta(3 * Q));
}

TEST_CASE("Delta from eta") {
  QExpansion d = delta(5 * Q);
  CHECK(d.valuation24() == Q);
  CHECK(scalar(d, Q) == 1);
  CHECK(scalar(d, 2 * Q) == -24);
  CHECK(scalar(d, 3 * Q) == 252);
  CHECK(scalar(d, 4 * Q) == -1472);
  CHECK((eta_power(-24, 3 * Q) * d).truncated(3 * Q) == QExpansion::constant(0, 1, 3 * Q).with_meta(modular_meta(0)));
}

TEST_CASE("Eisenstein series") {
  CHECK(scalar(eisenstein_E4(2 * Q), Q) == 240);
  CHECK(scalar(eisenstein_E6(2 * Q), Q) == -504);
  CHECK(scalar(eisenstein_G2(3 * Q), 2 * Q) == 3);
  CHECK(scalar(eisenstein_G2(3 * Q), 0) == make_rational(-1, 24));
  // E4^3 - E6^2 = 1728 Delta
  QExpansion e4 = eisenstein_E4(6 * Q), e6 = eisenstein_E6(6 * Q);
  QExpansion lhs = (e4 * e4 * e4) - (e6 * e6);
  CHECK(lhs == Rational(1728) * delta(6 * Q).with_meta(modular_meta(12)));
  CHECK(divisor_sigma(3, 6) == 1 + 8 + 27 + 216);
}

TEST_CASE("odd theta function") {
  QExpansion th = theta_odd(12 * Q);
  CHECK(th.coefficient(3) == poly1({{1, 1}, {-1, -1}}));
  CHECK(th.coefficient(3 + Q) == poly1({{3, -1}, {-3, 1}}));
  CHECK(th == theta_odd_product(12 * Q));
  // exponent-weighted sum of each q-level reproduces eta^3
  QExpansion e3 = eta_power(3, 12 * Q);
  for (int e = 0; e < 12 * Q; ++e) {
    Rational s = 0;
    const LaurentPoly level = th.coefficient(e);
    for (const auto& [m, c] : level.terms()) s += c * make_rational(m.doubled[0], 2);
    CHECK(s == scalar(e3, e));
  }
  QExpansion phi = (th * th) / eta_power(6, 12 * Q);
  CHECK(phi.coeff(0) == poly1({{2, 1}, {0, -2}, {-2, 1}}));
}

TEST_CASE("characteristic theta series") {
  QExpansion t3 = theta_char(ThetaChar::t3, 4 * Q);
  CHECK(t3.coeff(0) == LaurentPoly::constant(1, 1));
  CHECK(t3.coefficient(12) == poly1({{2, 1}, {-2, 1}}));
  QExpansion t2 = theta_char(ThetaChar::t2, 4 * Q);
  CHECK(t2.coefficient(3) == poly1({{1, 1}, {-1, 1}}));
  QExpansion t1s = theta_char(ThetaChar::t1s, 10 * Q);
  CHECK(restrict_last(t1s).is_zero());
  QExpansion t4 = theta_char(ThetaChar::t4, 4 * Q);
  CHECK(t4.coefficient(12) == poly1({{2, -1}, {-2, -1}}));
}

TEST_CASE("A1 generators") {
  QExpansion a = phi_m2_1(4 * Q);
  CHECK(a.coeff(0) == poly1({{2, 1}, {0, -2}, {-2, 1}}));
  QExpansion b = phi_0_1(4 * Q);
  CHECK(b.coeff(0) == poly1({{2, 1}, {0, 10}, {-2, 1}}));
  CHECK(b.coeff(1) == poly1({{4, 10}, {2, -64}, {0, 108}, {-2, -64}, {-4, 10}}));
  QExpansion at_zero = restrict_last(b);
  CHECK(at_zero.coeff(0) == LaurentPoly::constant(0, 12));
  for (int n = 1; n < 4; ++n) CHECK(at_zero.coeff(n).is_zero());
  CHECK(b.meta()->weight2 == 0);
  CHECK(a.meta()->weight2 == -4);
}

TEST_CASE("memo returns truncations of larger entries") {
  clear_memo();
  QExpansion big = eisenstein_E4(10 * Q);
  QExpansion small = eisenstein_E4(3 * Q);
  CHECK(small.trunc24() == 3 * Q);
  CHECK(small == big.truncated(3 * Q));
}
