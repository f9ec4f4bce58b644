#pragma once

// One-variable building blocks: eta, Delta, Eisenstein series, the odd Jacobi
// theta function, the four characteristic theta series and the A1 pair
// phi_{-2,1}, phi_{0,1}. All truncations are in 1/24 units (exclusive).
//
// Results are memoized by (name, trunc); a request is served by truncating any
// cached entry of at least the requested precision.

#include <functional>
#include <string>

#include "dtower/qexpansion.hpp"

namespace dtower {

/// q^{1/24} prod_{n>=1} (1 - q^n), expanded from the product.
QExpansion eta(int trunc24);
/// eta^k for any integer k (negative powers allowed).
QExpansion eta_power(int k, int trunc24);
/// Delta = eta^24.
QExpansion delta(int trunc24);
/// Delta^p.
QExpansion delta_power(int p, int trunc24);

QExpansion eisenstein_E4(int trunc24);
QExpansion eisenstein_E6(int trunc24);
/// G2 = -1/24 + sum sigma_1(n) q^n (quasi-modular, weight 2).
QExpansion eisenstein_G2(int trunc24);

/// q^{1/8} sum_n (-1)^n q^{n(n+1)/2} zeta^{n+1/2}.
QExpansion theta_odd(int trunc24);
/// q^{1/8} (zeta^{1/2} - zeta^{-1/2}) prod_{n>=1} (1 - q^n zeta)(1 - q^n zeta^{-1})(1 - q^n).
QExpansion theta_odd_product(int trunc24);

enum class ThetaChar { t2, t3, t4, t1s };
/// t3 = sum q^{m^2/2} zeta^m, t4 = sum (-1)^m q^{m^2/2} zeta^m,
/// t2 = sum q^{(m+1/2)^2/2} zeta^{m+1/2}, t1s = sum (-1)^m q^{(m+1/2)^2/2} zeta^{m+1/2}.
QExpansion theta_char(ThetaChar kind, int trunc24);
std::string to_string(ThetaChar kind);

/// theta^2 / eta^6 in A1 coordinates (norm form [1/2]).
QExpansion phi_m2_1(int trunc24);
/// -24 H(phi_{-2,1}).
QExpansion phi_0_1(int trunc24);

/// Memo lookup: returns compute(t) truncated to trunc24, reusing any cached
/// entry under key with trunc >= trunc24. compute must deliver at least trunc24.
QExpansion memoized(const std::string& key, int trunc24, const std::function<QExpansion(int)>& compute);
/// Drops every memoized entry.
void clear_memo();

/// Sum of d^k over the positive divisors d of n.
long long divisor_sigma(int k, int n);

}  // namespace dtower
