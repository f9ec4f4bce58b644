#include "dtower/operators.hpp"

#include "dtower/blocks.hpp"

namespace dtower {

QExpansion hecke_T(const QExpansion& a, int m) {
  if (m != 2) throw std::invalid_argument("hecke_T: only m = 2 is implemented");
  if (!a.meta()) throw MetaError("hecke_T: expansion carries no meta");
  const auto& meta = *a.meta();
  if (meta.index != 1) throw MetaError("hecke_T: index must be 1, got " + to_string(meta.index));
  if (meta.weight2 % 2 != 0) throw MetaError("hecke_T: weight must be an integer");
  if (!a.integral_q()) throw std::invalid_argument("hecke_T: q-exponents must be integral");
  const int k = meta.weight2 / 2;
  const Rational factor = pow2(k - 1);
  // c(2N, l) is known for 2N < T/24, i.e. N < ceil(T/48).
  const int in_powers = (a.trunc24() + kQUnit - 1) / kQUnit;
  const int out_trunc = kQUnit * ((in_powers + 1) / 2);
  QExpansion out(a.nvars(), out_trunc);
  for (const auto& [e, p] : a.coefficients()) {
    const int q = e / kQUnit;
    if (q % 2 == 0) out.add_term(kQUnit * (q / 2), p);
    if (kQUnit * 2 * q < out_trunc) out.add_term(kQUnit * 2 * q, factor * scale_exponents(p, 2));
  }
  JacobiFormMeta out_meta = meta;
  out_meta.index = 2;
  out.set_meta(out_meta);
  return out;
}

QExpansion hecke_T2_three_term(const QExpansion& a) {
  if (!a.meta() || a.meta()->weight2 % 2 != 0) throw MetaError("hecke_T2_three_term: needs an integer weight");
  if (!a.integral_q()) throw std::invalid_argument("hecke_T2_three_term: q-exponents must be integral");
  const Rational half_two_k = pow2(a.meta()->weight2 / 2 - 1);
  QExpansion out(a.nvars(), a.trunc24() / 2);
  for (const auto& [e, p] : a.coefficients()) {
    out.add_term(2 * e, half_two_k * scale_exponents(p, 2));
    // phi(tau/2, z) + phi((tau+1)/2, z): odd powers of q^{1/2} cancel.
    if ((e / kQUnit) % 2 == 0) out.add_term(e / 2, p);
  }
  JacobiFormMeta m = *a.meta();
  m.index *= 2;
  out.set_meta(m);
  return out;
}

QExpansion modular_diff_H(const QExpansion& a) {
  if (!a.meta()) throw MetaError("modular_diff_H: expansion carries no meta");
  const auto& meta = *a.meta();
  if (meta.index == 0) throw MetaError("modular_diff_H: index must be nonzero");
  if (meta.norm_form.size() != a.nvars()) throw MetaError("modular_diff_H: norm form missing");
  const Rational two_m = 2 * meta.index;
  QExpansion out(a.nvars(), a.trunc24());
  for (const auto& [e, p] : a.coefficients()) {
    const Rational n = make_rational(e, kQUnit);
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(p.size());
    for (const auto& [mono, c] : p.terms()) {
      Rational f = n - lattice_norm(mono, meta.norm_form) / two_m;
      if (f != 0) terms.emplace_back(mono, f * c);
    }
    out.add_term(e, LaurentPoly::from_terms(a.nvars(), std::move(terms)));
  }
  const int shift = meta.weight2 - static_cast<int>(a.nvars());
  QExpansion plain = a.with_meta(std::nullopt);
  if (shift != 0) {
    QExpansion g = Rational(shift) * (eisenstein_G2(a.trunc24()).with_meta(std::nullopt) * plain);
    for (const auto& [e, p] : g.coefficients()) out.add_term(e, p);
  }
  JacobiFormMeta out_meta = meta;
  out_meta.weight2 += 4;
  out.set_meta(out_meta);
  return out;
}

QExpansion divide_by_delta(const QExpansion& a, int power) {
  if (power <= 0) throw std::invalid_argument("divide_by_delta: power must be positive");
  if (a.valuation24() < kQUnit * power)
    throw std::domain_error("divide_by_delta: q-valuation is below the power of Delta");
  QExpansion out = a / delta_power(power, a.trunc24());
  if (a.meta()) {
    JacobiFormMeta m = *a.meta();
    m.weight2 -= 24 * power;
    out.set_meta(m);
  }
  return out;
}

}  // namespace dtower
