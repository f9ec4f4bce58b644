#pragma once

// Truncated q-series whose coefficients are Laurent polynomials in zeta.
//
// q-exponents are integers in units of 1/24 (eta carries q^{1/24}, the odd
// theta q^{1/8}). The truncation bound is exclusive and recorded exactly;
// asking for a coefficient at or beyond it is an error, never a silent zero.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtower/laurent.hpp"

namespace dtower {

class PrecisionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Raised when the weight/index bookkeeping of two operands is inconsistent.
class MetaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kQUnit = 24;

struct JacobiFormMeta {
  int weight2 = 0;  ///< twice the weight
  Rational index = 0;
  /// Diagonal quadratic form: (l,l) = sum d_i l_i^2 on semantic exponents.
  std::vector<Rational> norm_form;
  std::string lattice;   ///< e.g. "A1", "2A1", "D8", "" for modular forms
  std::string symmetry;  ///< e.g. "O(D8)", "W(D8)", ""

  Rational weight() const { return make_rational(weight2, 2); }
  friend bool operator==(const JacobiFormMeta&, const JacobiFormMeta&) = default;
};

/// Meta of a modular form of the given weight (no variables, index 0).
JacobiFormMeta modular_meta(int weight);

/// Meta of a Jacobi form with integer weight.
JacobiFormMeta jacobi_meta(int weight, const Rational& index, std::vector<Rational> norm_form, std::string lattice,
                           std::string symmetry = {});

enum class SupportKind { weak, holomorphic, cusp };

class QExpansion {
 public:
  explicit QExpansion(std::size_t nvars = 0, int trunc24 = 0);

  /// c + O(q^{trunc}).
  static QExpansion constant(std::size_t nvars, const Rational& c, int trunc24);

  std::size_t nvars() const { return nvars_; }
  int trunc24() const { return trunc_; }
  /// Least stored q-exponent, or trunc when nothing is stored.
  int valuation24() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, LaurentPoly>& coefficients() const { return coeffs_; }

  /// Coefficient of q^{q24/24}. Throws PrecisionError when q24 >= trunc.
  LaurentPoly coefficient(int q24) const;
  /// Coefficient of q^n for integer n.
  LaurentPoly coeff(int n) const { return coefficient(n * kQUnit); }

  /// Adds p to the coefficient of q^{q24/24}; terms at or beyond trunc are dropped.
  void add_term(int q24, const LaurentPoly& p);

  const std::optional<JacobiFormMeta>& meta() const { return meta_; }
  void set_meta(std::optional<JacobiFormMeta> m);
  QExpansion with_meta(std::optional<JacobiFormMeta> m) const;

  /// Copy with trunc lowered to min(trunc, t24).
  QExpansion truncated(int t24) const;

  /// True when every stored q-exponent is a multiple of 24.
  bool integral_q() const;

  /// Coefficients equal (meta ignored) and same trunc.
  friend bool operator==(const QExpansion& a, const QExpansion& b);

  QExpansion& operator*=(const Rational& c);
  friend QExpansion operator*(QExpansion a, const Rational& c) { return a *= c; }
  friend QExpansion operator*(const Rational& c, QExpansion a) { return a *= c; }
  friend QExpansion operator-(QExpansion a) { return a *= Rational(-1); }

 private:
  std::size_t nvars_;
  int trunc_;
  std::map<int, LaurentPoly> coeffs_;
  std::optional<JacobiFormMeta> meta_;
};

/// Sum; trunc = min of the operands. Metas must agree in weight and index.
QExpansion operator+(const QExpansion& a, const QExpansion& b);
QExpansion operator-(const QExpansion& a, const QExpansion& b);

/// Product; trunc = min(Ta + vb, Tb + va). A series in zero variables
/// multiplies every coefficient of the other operand. Weights and indices add.
QExpansion operator*(const QExpansion& a, const QExpansion& b);

/// Order-by-order exact quotient. Throws InexactDivision when some order does
/// not divide exactly and std::domain_error when den vanishes to its trunc.
QExpansion operator/(const QExpansion& num, const QExpansion& den);

/// Sets the last variable to zero (zeta_n = 1); norm form drops its last entry.
QExpansion restrict_last(const QExpansion& a);

/// tau -> c*tau, z -> c*z: both q- and zeta-exponents scale by c.
QExpansion rescale_tau(const QExpansion& a, int c);

/// Linear change of variables old = A * new applied to every coefficient. The
/// norm form is pulled back to A^{-1} D A^{-T}, which must stay diagonal.
QExpansion substitute_linear(const QExpansion& a, const std::vector<std::vector<Rational>>& matrix);

/// Signed permutation applied to every coefficient.
QExpansion act(const SignedPermutation& g, const QExpansion& a);

/// Moves the variables to the given positions in an nvars-variable ring. Meta is dropped.
QExpansion embed(const QExpansion& a, std::size_t nvars, const std::vector<std::size_t>& positions);

/// Product of series in disjoint variable sets: the result has the variables of
/// factor 0 first, then those of factor 1, and so on. trunc is the usual product
/// bound, capped at trunc24. Meta is dropped.
QExpansion outer_product(const std::vector<QExpansion>& factors, int trunc24);

/// Applies f to every coefficient (results are re-canonicalised; meta is kept).
template <class F>
QExpansion map_coefficients(const QExpansion& a, std::size_t nvars, F&& f) {
  QExpansion out(nvars, a.trunc24());
  for (const auto& [e, p] : a.coefficients()) out.add_term(e, f(p));
  if (a.meta()) out.set_meta(*a.meta());
  return out;
}

/// (l,l) for a doubled exponent vector under a diagonal norm form.
Rational lattice_norm(const Monomial& m, const std::vector<Rational>& norm_form);

/// Fourier-side support predicate over the stored (truncated) coefficients.
/// weak: all q-exponents >= 0; holomorphic: 2mn >= (l,l); cusp: 2mn > (l,l).
bool support_check(const QExpansion& a, SupportKind kind);

/// Multi-line rendering, one q-level per line.
std::string to_string(const QExpansion& a);

/// Renders a q-exponent given in 1/24 units, e.g. "q^(1/8)" or "q^2".
std::string q_power_string(int q24);

}  // namespace dtower
