#pragma once

// Small expression language over named forms, used by the command-line tool
// and by relation problem files.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | name | name '(' expr (',' integer)? ')' | '(' expr ')'
//
// Functions: H(x) modular differential operator, T(x) Hecke T_-(2),
// D(x) division by Delta, R(x, m) restriction to the first m variables.
// Names ignore case, '-' and '_', so "phi01-d8" and "phi01_d8" are the same.

#include <optional>
#include <string>
#include <vector>

#include "dtower/qexpansion.hpp"

namespace dtower {

class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NamedFormInfo {
  std::string name;         ///< display name, e.g. "phi01-d8"
  std::string description;
};

/// Every name the evaluator knows, in display form.
const std::vector<NamedFormInfo>& named_forms();

/// "phi01-d8" -> "phi01d8". Lowercase with '-' and '_' removed.
std::string canonical_name(const std::string& name);

bool is_named_form(const std::string& name);

/// Named form for the rank-n tower with trunc >= trunc24. Throws ExpressionError
/// for unknown names and std::invalid_argument for an unsupported n.
QExpansion named_form(const std::string& name, int n, int trunc24);

/// Evaluates expr and returns it truncated to exactly trunc24; operands are
/// recomputed at higher precision as needed (Hecke halves the q-range, divisions
/// consume the valuation of the denominator). A scalar result becomes a constant series.
QExpansion evaluate_expression(const std::string& expr, int n, int trunc24);

/// Canonical spelling of an expression (names canonicalised, spaces removed),
/// used as a cache key. Throws ExpressionError on syntax errors.
std::string canonical_expression(const std::string& expr);

}  // namespace dtower
