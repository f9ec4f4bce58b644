#pragma once

#include <random>
#include <string>
#include <vector>

#include "dtower/laurent.hpp"
#include "dtower/qexpansion.hpp"

namespace testing_helpers {

using dtower::LaurentPoly;
using dtower::Rational;

inline LaurentPoly mono(std::size_t n, std::vector<int> doubled, const Rational& c = 1) {
  return LaurentPoly::term(n, doubled, c);
}

/// Single-variable polynomial sum c_i zeta^{e_i/2} from (doubled exponent, coefficient) pairs.
inline LaurentPoly poly1(std::initializer_list<std::pair<int, long>> terms) {
  LaurentPoly p(1);
  for (auto [e, c] : terms) p += LaurentPoly::term(1, {e}, c);
  return p;
}

/// sum over j of (zeta_j + zeta_j^{-1}) in n variables, times c.
inline LaurentPoly sum_pm1(std::size_t n, const Rational& c = 1) {
  LaurentPoly p(n);
  for (std::size_t j = 0; j < n; ++j)
    for (int s : {2, -2}) {
      std::vector<int> e(n, 0);
      e[j] = s;
      p += LaurentPoly::term(n, e, c);
    }
  return p;
}

/// sum of zeta_1^{+-1/2}...zeta_n^{+-1/2} over sign patterns; parity -1 = all,
/// 0 = even number of minus signs, 1 = odd number.
inline LaurentPoly sum_half(std::size_t n, int parity, const Rational& c = 1) {
  LaurentPoly p(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int minus = __builtin_popcount(mask);
    if (parity >= 0 && minus % 2 != parity) continue;
    std::vector<int> e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = (mask >> j) & 1u ? -1 : 1;
    p += LaurentPoly::term(n, e, c);
  }
  return p;
}

/// sum over unordered pairs j<k and sign choices of zeta_j^{+-1} zeta_k^{+-1}.
inline LaurentPoly sum_pairs(std::size_t n, const Rational& c = 1) {
  LaurentPoly p(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      for (int s : {2, -2})
        for (int t : {2, -2}) {
          std::vector<int> e(n, 0);
          e[j] = s;
          e[k] = t;
          p += LaurentPoly::term(n, e, c);
        }
  return p;
}

/// sum over j<k<l and signs of zeta_j^{+-1} zeta_k^{+-1} zeta_l^{+-1}.
inline LaurentPoly sum_triples(std::size_t n, const Rational& c = 1) {
  LaurentPoly p(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l)
        for (int mask = 0; mask < 8; ++mask) {
          std::vector<int> e(n, 0);
          e[j] = mask & 1 ? -2 : 2;
          e[k] = mask & 2 ? -2 : 2;
          e[l] = mask & 4 ? -2 : 2;
          p += LaurentPoly::term(n, e, c);
        }
  return p;
}

/// Random sparse polynomial with small half-integer exponents.
inline LaurentPoly random_poly(std::mt19937& rng, std::size_t n, int terms = 4, int span = 3) {
  std::uniform_int_distribution<int> exp(-span, span), coef(-5, 5), den(1, 3);
  std::vector<LaurentPoly::Term> t;
  for (int i = 0; i < terms; ++i) {
    std::vector<int> e(n);
    for (auto& x : e) x = exp(rng);
    t.emplace_back(dtower::Monomial::from_doubled(e), dtower::make_rational(coef(rng), den(rng)));
  }
  return LaurentPoly::from_terms(n, std::move(t));
}

}  // namespace testing_helpers
