#pragma once

// Hecke operator T_-(2) and the modular differential operator H_k acting on
// Fourier expansions.

#include "dtower/qexpansion.hpp"

namespace dtower {

/// T_-(m) for m = 2 on an index-1 form with integer weight k and integral
/// q-exponents:
///   c'(n, l) = c(2n, l) + 2^{k-1} c(n/2, l/2),
/// the second term only when n is even and l/2 is in the exponent lattice.
/// This is the three-term average m^{-1} sum_{ad=m, b mod d} a^k phi((a tau + b)/d, a z)
/// with the b-sum killing the odd q-powers of phi(tau/2, z). Input trunc T gives
/// output trunc ceil(T/2) in whole q-powers. The result has index 2.
QExpansion hecke_T(const QExpansion& a, int m = 2);
inline QExpansion hecke_T2(const QExpansion& a) { return hecke_T(a, 2); }

/// Direct evaluation of (1/2)[2^k phi(2tau, 2z) + phi(tau/2, z) + phi((tau+1)/2, z)]
/// by substituting into the expansion. Independent of the coefficient rule and
/// used to cross-check it; output trunc is half the input trunc.
QExpansion hecke_T2_three_term(const QExpansion& a);

/// H_k(phi) = sum (n - (l,l)/2m) a(n,l) q^n zeta^l + (2k - n0) G2 phi,
/// with (l,l) from the meta norm form and n0 the variable count.
/// Weight goes up by 2; index and trunc are unchanged.
QExpansion modular_diff_H(const QExpansion& a);

/// a / Delta^power. Requires q-valuation >= power; weight drops by 12 power.
QExpansion divide_by_delta(const QExpansion& a, int power = 1);

}  // namespace dtower
