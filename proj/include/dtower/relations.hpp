#pragma once

// Exact linear algebra over truncated expansions: identity checks with a
// first-mismatch witness, nullspaces of coefficient matrices, rank
// certificates for generator monomials, and the divisibility probe by omega^2.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtower/qexpansion.hpp"

namespace dtower {

struct Mismatch {
  int q24 = 0;
  Monomial monomial;
  Rational lhs, rhs;
};

struct IdentityReport {
  bool equal = false;
  int compared_trunc24 = 0;  ///< orders below this were compared
  std::optional<Mismatch> witness;
  std::string to_string(std::size_t nvars) const;
};

/// Exact comparison below the smaller trunc. Both sides must have the same
/// variable count and, where present, the same weight and index.
IdentityReport check_identity(const QExpansion& lhs, const QExpansion& rhs);

/// Reduced row echelon form built one row at a time.
class RowReducer {
 public:
  explicit RowReducer(std::size_t ncols) : ncols_(ncols) {}
  /// Reduces r against the current rows; returns true when it raised the rank.
  bool add(std::vector<Rational> r);
  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  /// One basis vector per free column: 1 there, minus the pivot rows' entries elsewhere.
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  std::size_t ncols_;
  std::vector<std::vector<Rational>> rows_;  ///< sorted by pivot
  std::vector<std::size_t> pivots_;
};

struct RelationProblem {
  std::vector<QExpansion> forms;
  std::vector<std::string> labels;
  /// q-orders (in 1/24 units) whose coefficients must vanish; empty means every
  /// order below the common trunc.
  std::vector<int> constrained_q24;
  /// Check that each solution vanishes at every order below the common trunc.
  bool require_full_vanishing = false;
};

struct SolutionSpace {
  std::vector<std::string> labels;
  std::vector<std::size_t> pivots;  ///< dependent coordinates
  std::vector<std::size_t> free;    ///< parameters
  /// Canonical basis: basis[j] has 1 at free[j] and 0 at the other free coordinates.
  std::vector<std::vector<Rational>> basis;
  int common_trunc24 = 0;
  bool full_vanishing_checked = false;
  bool full_vanishing = true;  ///< meaningful when checked

  std::size_t dimension() const { return basis.size(); }
  /// "a6 = 1/27*a1 + ..." for each dependent coordinate.
  std::vector<std::string> formulas() const;
  std::string to_string() const;
};

SolutionSpace solve_relation(const RelationProblem& p);

/// The unique element of the space with the given coordinates fixed, or
/// nullopt when the values are inconsistent with the space. Throws when the
/// fixed coordinates do not determine the element.
std::optional<std::vector<Rational>> fix_coordinates(const SolutionSpace& s,
                                                     const std::map<std::size_t, Rational>& fixed);

/// Coordinates nparams.. of the space as linear forms in the first nparams
/// coordinates, e.g. "a6 = 1/27*a1 + 2/3*a2". Throws std::invalid_argument
/// when the first nparams coordinates do not determine the rest or cannot be
/// chosen freely.
std::vector<std::string> dependent_formulas(const SolutionSpace& s, std::size_t nparams);

/// sum c_i forms_i with metas dropped.
QExpansion linear_combination(const std::vector<QExpansion>& forms, const std::vector<Rational>& coeffs);

/// Rank of the coefficient vectors below the common trunc.
std::size_t rank_of(const std::vector<QExpansion>& forms);

struct RankCertificate {
  int n = 0, weight = 0, index = 0;
  int trunc24 = 0;
  std::vector<std::string> monomials;
  std::size_t rank = 0;
  std::size_t expected = 0;
  bool full_rank() const { return rank == expected; }
  std::string to_string() const;
};

/// Products E4^a E6^b prod g_j^{e_j} of the D_n tower generators with the
/// given weight and index.
std::vector<std::string> generator_monomials(int n, int weight, int index);
/// Evaluates a monomial label produced by generator_monomials.
QExpansion evaluate_monomial(const std::string& label, int n, int trunc24);

RankCertificate independence_rank(int n, int weight, int index, int trunc24);
/// Certificate for an explicit family.
RankCertificate rank_certificate(const std::vector<std::string>& labels, const std::vector<QExpansion>& forms);

struct ProbeResult {
  bool divisible = false;
  std::string reason;
  std::optional<QExpansion> quotient;
};

/// Divides a by (omega^{D_n})^2 after checking that a vanishes on every z_i = 0.
ProbeResult divisibility_probe(const QExpansion& a);

struct NamedForms {
  std::vector<std::string> labels;
  std::vector<QExpansion> forms;
};

/// The seven weight-8 forms obtained from phi_{0,1}^{D8} by H and E4, E6:
/// H6H4H2H0 phi, H6H4(E4 phi), H6(E4 H0 phi), H6(E6 phi), E4 H2H0 phi, E6 H0 phi, E4^2 phi.
NamedForms mde_d8_weight8_forms(int trunc24);
/// H4H2H0 phi01, E4 H0 phi01, H4(E4 phi01), E6 phi01 for the A1 form phi_{0,1}.
NamedForms mde_a1_weight6_forms(int trunc24);
/// E6 phi_{-4,1}, E4 phi_{-2,1}, H0(phi_{0,1}) for D8.
NamedForms mde_d8_index1_forms(int trunc24);

}  // namespace dtower
