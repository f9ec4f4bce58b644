#include <map>

#include "doctest.h"
#include "dtower/blocks.hpp"
#include "dtower/lattice.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dtower;
using namespace testing_helpers;

namespace {

constexpr int Q = kQUnit;

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::map<Rational, std::size_t> norm_counts(const std::vector<LatticePoint>& pts) {
  std::map<Rational, std::size_t> out;
  for (const auto& p : pts) ++out[p.norm()];
  return out;
}

}  // namespace

TEST_CASE("group tags parse and print") {
  CHECK(GroupTag::parse("W(D8)") == GroupTag{GroupKind::weyl, 8});
  CHECK(GroupTag::parse("O'(D4)").to_string() == "O'(D4)");
  CHECK(full_signed_group(4).kind == GroupKind::orthogonal_prime);
  CHECK(full_signed_group(6).to_string() == "O(D6)");
  CHECK_THROWS_AS(GroupTag::parse("Sp(4)"), std::invalid_argument);
}

TEST_CASE("generated group orders") {
  for (int n = 2; n <= 5; ++n) {
    const long w = (1L << (n - 1)) * factorial(n);
    CHECK(static_cast<long>(oracles::closure(group_generators({GroupKind::weyl, n})).size()) == w);
    const long o = 2 * w;
    CHECK(static_cast<long>(oracles::closure(group_generators(full_signed_group(n))).size()) == o);
  }
  // W(D_n) is exactly the even-sign-parity half of the signed permutations.
  for (const auto& g : oracles::closure(group_generators({GroupKind::weyl, 4}))) CHECK(g.parity() == 0);
  CHECK_THROWS_AS(group_generators({GroupKind::orthogonal, 4}), std::invalid_argument);
  CHECK_THROWS_AS(group_generators({GroupKind::orthogonal_prime, 5}), std::invalid_argument);
}

TEST_CASE("invariance of theta products") {
  QExpansion t3 = theta_char(ThetaChar::t3, 4 * Q), th = theta_odd(4 * Q);
  QExpansion even = outer_product({t3, t3, t3}, 4 * Q);
  CHECK(is_invariant(even, full_signed_group(3)));
  QExpansion odd = outer_product({th, th, th}, 4 * Q);
  CHECK(is_invariant(odd, {GroupKind::weyl, 3}));
  CHECK_FALSE(is_invariant(odd, full_signed_group(3)));
  CHECK(is_anti_invariant(odd, 3));
  CHECK_FALSE(is_anti_invariant(even, 3));
  QExpansion skew = outer_product({t3, th, t3}, 4 * Q);
  CHECK_FALSE(is_invariant(skew, {GroupKind::weyl, 3}));
  CHECK_THROWS_AS(is_invariant(even, {GroupKind::weyl, 4}), std::invalid_argument);
}

TEST_CASE("exponent classes") {
  QExpansion th = theta_odd(3 * Q), t3 = theta_char(ThetaChar::t3, 3 * Q);
  CHECK(exponents_in_dual_classes(outer_product({th, th}, 3 * Q)));
  CHECK(exponents_in_dual_classes(outer_product({t3, t3}, 3 * Q)));
  CHECK_FALSE(exponents_in_dual_classes(outer_product({th, t3}, 3 * Q)));
}

TEST_CASE("lattice vector counts") {
  auto z3 = norm_counts(enumerate_lattice_vectors(LatticeKind::integer, 3, 3));
  CHECK(z3[0] == 1);
  CHECK(z3[1] == 6);
  CHECK(z3[2] == 12);
  CHECK(z3[3] == 8);
  auto d4 = norm_counts(enumerate_lattice_vectors(LatticeKind::d, 4, 4));
  CHECK(d4[2] == 24);
  CHECK(d4[4] == 24);
  CHECK(d4.count(1) == 0);
  auto e8 = norm_counts(enumerate_lattice_vectors(LatticeKind::e8, 8, 6));
  CHECK(e8[0] == 1);
  CHECK(e8[2] == 240);
  CHECK(e8[4] == 2160);
  CHECK(e8[6] == 6720);
  auto s8 = norm_counts(enumerate_lattice_vectors(LatticeKind::d_shifted, 8, 2));
  CHECK(s8[2] == 128);
  auto d16 = norm_counts(enumerate_lattice_vectors(LatticeKind::d16_plus, 16, 4));
  CHECK(d16[2] == 480);
  CHECK(d16[4] == 61920);
  CHECK_THROWS_AS(enumerate_lattice_vectors(LatticeKind::e8, 7, 2), std::invalid_argument);
}

TEST_CASE("E8 theta series from enumeration matches E4") {
  auto pts = enumerate_lattice_vectors(LatticeKind::e8, 8, 8);
  auto counts = norm_counts(pts);
  QExpansion e4 = eisenstein_E4(5 * Q);
  for (int n = 0; n <= 4; ++n) CHECK(Rational(static_cast<long>(counts[2 * n])) == e4.coeff(n).value_at_one());
}
