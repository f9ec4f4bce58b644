#pragma once

// D_n lattice data: signed-permutation groups W(D_n), O(D_n), O'(D_4),
// invariance tests on expansions, and brute-force lattice enumeration.

#include <string>
#include <vector>

#include "dtower/qexpansion.hpp"
#include "dtower/signed_permutation.hpp"

namespace dtower {

enum class GroupKind { weyl, orthogonal, orthogonal_prime };

struct GroupTag {
  GroupKind kind = GroupKind::weyl;
  int n = 0;

  /// "W(D8)", "O(D8)", "O'(D4)".
  std::string to_string() const;
  static GroupTag parse(const std::string& text);
  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

/// O(D_n) for n != 4, O'(D_4) for n = 4.
GroupTag full_signed_group(int n);

/// W(D_n): adjacent transpositions and the flip of (z1, z2).
/// O(D_n), O'(D_4): adjacent transpositions and the flip of z1.
/// O(D_4) itself contains triality and is rejected.
std::vector<SignedPermutation> group_generators(const GroupTag& g);

/// Every generator fixes every stored coefficient.
bool is_invariant(const QExpansion& a, const GroupTag& g);
/// Invariant under W(D_n) and negated by the flip of z1.
bool is_anti_invariant(const QExpansion& a, int n);

/// Every exponent vector of every coefficient is all-integral or all-half-integral.
bool exponents_in_dual_classes(const QExpansion& a);

enum class LatticeKind { integer, d, d_shifted, e8, d16_plus };

/// A lattice vector with doubled coordinates.
struct LatticePoint {
  std::vector<int> doubled;
  /// (l,l) with the standard form.
  Rational norm() const;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// All vectors with (l,l) <= max_norm, each once, sorted.
///   integer: Z^n; d: D_n (even coordinate sum); d_shifted: (Z+1/2)^n with
///   even coordinate sum; e8: D_8 and its shifted coset (n must be 8);
///   d16_plus: D_16 and its shifted coset (n must be 16).
std::vector<LatticePoint> enumerate_lattice_vectors(LatticeKind kind, int n, const Rational& max_norm);

/// Sum of the distinct monomials zeta^{g(v)} over signed permutations g, v given
/// in doubled coordinates. weyl restricts to an even number of sign changes, so
/// (1/2,...,1/2) gives the half-vectors with an even number of minus signs.
LaurentPoly orbit_sum(const std::vector<int>& doubled, bool weyl = false);

/// sum over the points of q^{(l,l)/2} zeta^{l'}, l' the first nvars coordinates.
QExpansion lattice_theta_series(const std::vector<LatticePoint>& points, std::size_t nvars, int trunc24);

}  // namespace dtower
