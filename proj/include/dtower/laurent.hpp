#pragma once

// Sparse multivariate Laurent polynomials over Q with exponents in (1/2)Z.
//
// Every exponent is stored doubled: the monomial zeta_1^{1/2} zeta_2^{-1} is
// kept as (1, -2). Terms are kept sorted in graded-lexicographic order on the
// doubled exponents with no zero coefficients, so equality is plain vector
// equality and the leading term is the last element.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtower/rational.hpp"
#include "dtower/signed_permutation.hpp"

namespace dtower {

inline constexpr std::size_t kMaxVars = 8;

/// Raised when a requested exact division leaves a remainder.
class InexactDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Monomial {
  using Exponent = std::int16_t;
  /// Doubled exponents; entries past the owning polynomial's nvars are zero.
  std::array<Exponent, kMaxVars> doubled{};

  static Monomial from_doubled(const std::vector<int>& exps);

  int degree() const {
    int d = 0;
    for (auto e : doubled) d += e;
    return d;
  }
  /// Sum of squared doubled exponents (4 * Euclidean norm).
  int doubled_norm() const {
    int d = 0;
    for (auto e : doubled) d += e * e;
    return d;
  }
  bool all_even(std::size_t nvars) const {
    for (std::size_t i = 0; i < nvars; ++i)
      if (doubled[i] % 2 != 0) return false;
    return true;
  }

  friend Monomial operator+(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.doubled[i] = static_cast<Exponent>(a.doubled[i] + b.doubled[i]);
    return m;
  }
  friend Monomial operator-(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.doubled[i] = static_cast<Exponent>(a.doubled[i] - b.doubled[i]);
    return m;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order on doubled exponents: total degree first, then
/// lexicographic with variable 1 most significant. Compatible with multiplication.
struct GradLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.doubled < b.doubled;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

class LaurentPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  explicit LaurentPoly(std::size_t nvars = 0);

  static LaurentPoly constant(std::size_t nvars, const Rational& c);
  /// Single term c * zeta^(doubled/2).
  static LaurentPoly term(std::size_t nvars, const std::vector<int>& doubled, const Rational& c = 1);
  /// Sums duplicate monomials, drops zeros and sorts.
  static LaurentPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Coefficient of the monomial (zero when absent).
  Rational coefficient(const Monomial& m) const;
  Rational coefficient(const std::vector<int>& doubled) const { return coefficient(Monomial::from_doubled(doubled)); }
  /// Sum of all coefficients: the value at zeta = (1, ..., 1).
  Rational value_at_one() const;

  const Term& leading_term() const;

  /// True when the stored form is canonical (sorted, unique, nonzero, in range).
  bool is_canonical() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= Rational(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  friend class TermAccumulator;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Hash-based accumulator for building a polynomial from many partial terms.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t nvars, std::size_t expected_terms = 0);
  void add(const Monomial& m, const Rational& c);
  /// Adds c * (m * p) for every term of p.
  void add_shifted(const LaurentPoly& p, const Monomial& m, const Rational& c);
  LaurentPoly finish();

 private:
  std::size_t nvars_;
  std::unordered_map<Monomial, Rational, MonomialHash> acc_;
};

/// Product; variable counts must agree.
LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b);

/// Exact quotient num / den, or nullopt when den does not divide num.
/// Throws std::invalid_argument for den = 0 or mismatched variable counts.
std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& num, const LaurentPoly& den);
/// As try_exact_divide but throws InexactDivision on a remainder.
LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den);

/// Linear change of variables old = A * new. Exponents transform as
/// l_new = A^T l_old; every image exponent must lie in (1/2)Z.
LaurentPoly substitute_linear(const LaurentPoly& p, const std::vector<std::vector<Rational>>& a);

/// Sets zeta_var = 1 and drops the variable.
LaurentPoly restrict_variable(const LaurentPoly& p, std::size_t var);

/// Image of p under the signed permutation (acting on exponent vectors).
LaurentPoly act(const SignedPermutation& g, const LaurentPoly& p);

/// Places the variables of p at the given positions of an nvars-variable ring.
LaurentPoly embed(const LaurentPoly& p, std::size_t nvars, const std::vector<std::size_t>& positions);

/// Multiplies every exponent by c.
LaurentPoly scale_exponents(const LaurentPoly& p, int c);

/// Human-readable rendering, e.g. "8 + ζ₁ + ζ₁⁻¹ + ζ₁^(1/2)ζ₂^(-1/2)".
std::string to_string(const LaurentPoly& p);

}  // namespace dtower
