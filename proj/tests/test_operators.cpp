#include "doctest.h"
#include "dtower/blocks.hpp"
#include "dtower/operators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dtower;
using namespace testing_helpers;

namespace {
constexpr int Q = kQUnit;
}

TEST_CASE("H on the A1 generators") {
  QExpansion a = phi_m2_1(5 * Q);
  QExpansion h = modular_diff_H(a);
  CHECK(h.meta()->weight2 == 0);
  CHECK(h == make_rational(-1, 24) * phi_0_1(5 * Q));
  QExpansion h0 = modular_diff_H(phi_0_1(5 * Q));
  CHECK(h0.coeff(0) == poly1({{2, -5}, {0, 10}, {-2, -5}}) * make_rational(1, 24));
  CHECK(support_check(h0, SupportKind::weak));
}

TEST_CASE("H is linear and needs an index") {
  QExpansion a = eisenstein_E4(4 * Q) * phi_0_1(4 * Q);
  QExpansion b = eisenstein_E6(4 * Q) * phi_m2_1(4 * Q);
  CHECK(modular_diff_H(a + Rational(3) * b) == modular_diff_H(a) + Rational(3) * modular_diff_H(b));
  CHECK_THROWS_AS(modular_diff_H(eisenstein_E4(Q)), MetaError);
  CHECK_THROWS_AS(modular_diff_H(phi_m2_1(Q).with_meta(std::nullopt)), MetaError);
}

TEST_CASE("H commutes with the sign flip") {
  QExpansion c = phi_0_1(4 * Q);
  SignedPermutation flip = SignedPermutation::sign_flip(1, {0});
  CHECK(act(flip, modular_diff_H(c)) == modular_diff_H(act(flip, c)));
}

TEST_CASE("Hecke operator coefficient rule equals the three-term average") {
  QExpansion a = phi_m2_1(10 * Q);
  QExpansion t = hecke_T2(a);
  CHECK(t.trunc24() == 5 * Q);
  CHECK(t.meta()->index == 2);
  QExpansion oracle = oracles::hecke_three_term(a);
  CHECK(t == oracle.truncated(t.trunc24()));
  CHECK(oracles::hecke_three_term(phi_0_1(8 * Q)).truncated(4 * Q) == hecke_T2(phi_0_1(8 * Q)));
}

TEST_CASE("Hecke quotient for A1 gives phi_{0,1}") {
  QExpansion a = phi_m2_1(10 * Q);
  QExpansion ratio = hecke_T2(a) / a;
  // The literal prefactor 2 gives a quarter of phi_{0,1}; 8 reproduces it.
  CHECK(Rational(2) * ratio == make_rational(1, 4) * phi_0_1(ratio.trunc24()).with_meta(std::nullopt));
  CHECK(Rational(8) * ratio == phi_0_1(ratio.trunc24()).with_meta(std::nullopt));
}

TEST_CASE("Hecke preserves divisibility by the z = 0 divisor") {
  QExpansion a = phi_m2_1(8 * Q);
  QExpansion t = hecke_T2(a);
  LaurentPoly d = poly1({{1, 1}, {-1, -1}});
  for (const auto& [e, p] : t.coefficients()) CHECK(try_exact_divide(p, d).has_value());
}

TEST_CASE("Hecke preconditions") {
  CHECK_THROWS_AS(hecke_T(phi_m2_1(4 * Q), 3), std::invalid_argument);
  CHECK_THROWS_AS(hecke_T2(phi_m2_1(4 * Q) * phi_m2_1(4 * Q)), MetaError);
  CHECK_THROWS_AS(hecke_T2(phi_m2_1(4 * Q).with_meta(std::nullopt)), MetaError);
}

TEST_CASE("division by Delta") {
  QExpansion d2 = delta_power(2, 6 * Q);
  QExpansion q = divide_by_delta(d2);
  CHECK(q == delta(5 * Q));
  CHECK(q.meta()->weight2 == 24);
  CHECK_THROWS_AS(divide_by_delta(eisenstein_E4(3 * Q)), std::domain_error);
}
