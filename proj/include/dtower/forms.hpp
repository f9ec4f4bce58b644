#pragma once

// Named Jacobi forms for the D_n lattices, n <= 8, in the coordinates z_1..z_n
// with norm form (l,l) = sum l_i^2. Every constructor is memoized and returns a
// fully tagged expansion with trunc >= the requested trunc24.

#include <string>
#include <vector>

#include "dtower/qexpansion.hpp"

namespace dtower {

/// theta(z_1)...theta(z_n) / eta^{3n}: weight -n, index 1, W(D_n)-invariant
/// and odd under a single sign change.
QExpansion omega_Dn(int n, int trunc24);

/// theta(z_1)...theta(z_8) = Delta * omega^{D8}: weight 4, index 1.
QExpansion theta_D8_product(int trunc24);

/// Theta series of E8 restricted to D8 coordinates, from the four coset products
/// (1/2)(prod t3 + prod t4 + prod t2 + prod t1s).
QExpansion theta_E8(int trunc24);

/// Theta series of D16+ with the last eight coordinates set to 0:
/// (1/2)(prod t3(z_i) t3(0)^8 + prod t4(z_i) t4(0)^8 + prod t2(z_i) t2(0)^8).
QExpansion theta_D16plus_restricted(int trunc24);

/// (E4 theta_E8 - theta_D16+|D8) / Delta: weight -4, index 1, W(D8)- but not O(D8)-invariant.
QExpansion phi_tilde_m4_1(int trunc24);
/// 2 phi_tilde - E4 omega^{D8}.
QExpansion phi_m4_1_D8(int trunc24);
/// 3 H(phi_{-4,1}).
QExpansion phi_m2_1_D8(int trunc24);
/// -(theta_D8|T_-(2)) / theta_D8.
QExpansion phi_0_1_D8(int trunc24);
/// 512 (omega|T_-(2)) / omega.
QExpansion psi_0_1_D8(int trunc24);
/// 2 H(phi_{-2,1}^{D8}), the differential route to psi.
QExpansion psi_0_1_D8_differential(int trunc24);

/// Hecke quotients with prefactor 1: (a|T_-(2)) / a for a = theta_D8 and omega^{D8}.
QExpansion hecke_quotient_theta_D8(int trunc24);
QExpansion hecke_quotient_omega_D8(int trunc24);
/// (phi_{-2,1}|T_-(2)) / phi_{-2,1} in A1 coordinates.
QExpansion hecke_quotient_A1(int trunc24);

/// Symmetrized index-2 form: sum over k-subsets S of prod_{i in S} phi_{-2,1}(z_i)
/// prod_{i not in S} phi_{0,1}(z_i). Weight -2k, index 2.
QExpansion phi_index2(int n, int k, int trunc24);

/// Names understood by tower_form: "phi_0_1", "phi_-2_1", "phi_-4_1",
/// "phi_-<2k>_2" (0 <= k <= n), "omega", "omega_sq".
/// Index-1 members for n < 8 are restrictions z_8 = ... = z_{n+1} = 0 of the D8 forms.
QExpansion tower_form(const std::string& name, int n, int trunc24);

/// Generator names of the O(D_n)-invariant ring (O'(D4) for n = 4) for 2 <= n <= 8.
std::vector<std::string> tower_generators(int n);

/// Weight and index of a tower name at rank n, without computing it.
JacobiFormMeta tower_meta(const std::string& name, int n);

/// a / (theta(z_1)...theta(z_n)) computed one theta factor at a time; each
/// factor costs 1/8 of a q-power of precision. Meta is dropped.
QExpansion divide_by_theta_product(const QExpansion& a);

/// Sets z_{n+1} = ... = z_8 = 0 in an 8-variable D8 form and retags it for D_n.
QExpansion restrict_to_Dn(const QExpansion& a, int n);

struct D2Family {
  QExpansion phi_m4_1;    ///< phi_{-2,1}(w1) phi_{-2,1}(w2)
  QExpansion phi_m2_1;    ///< phi_{-2,1}(w1) phi_{0,1}(w2) + phi_{0,1}(w1) phi_{-2,1}(w2)
  QExpansion phi_hat_0_1; ///< phi_{0,1}(w1) phi_{0,1}(w2)
  QExpansion phi_0_1;     ///< phi_hat + 5 E4 phi_{-4,1}
  QExpansion omega;       ///< (phi_{-2,1}(w1) phi_{0,1}(w2) - phi_{0,1}(w1) phi_{-2,1}(w2)) / 12
};

/// The D2 forms built in w-coordinates (w1, w2) = ((z1+z2)/2, (z1-z2)/2) and
/// returned in z-coordinates.
D2Family d2_family(int trunc24);

}  // namespace dtower
