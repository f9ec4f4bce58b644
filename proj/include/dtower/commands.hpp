#pragma once

// Command-line front end. run_cli parses argv and dispatches to the
// compute, verify, solve and cache subcommands.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "dtower/relations.hpp"

namespace dtower {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A relation problem file:
///   {"n": 8, "prec": 3, "forms": ["E6*phim41-d8", ...], "labels": [...],
///    "vanish_orders": [0], "full_vanishing": true, "parameters": 5}
/// labels default to the expressions; vanish_orders (whole q-powers) default to
/// every order; parameters, when present, asks for the remaining coordinates as
/// linear forms in the first `parameters` ones.
struct ProblemFile {
  int n = 8;
  int prec = 3;
  std::vector<std::string> forms;
  std::vector<std::string> labels;
  std::vector<int> vanish_orders;
  bool full_vanishing = true;
  int parameters = 0;
};

/// Throws std::invalid_argument on malformed input.
ProblemFile parse_problem(const nlohmann::json& j);

struct ProblemSolution {
  SolutionSpace space;
  /// "a6 = 1/27*a1 + ..." lines when parameters > 0 and they determine the rest.
  std::vector<std::string> dependent;
  std::string parameter_note;
};

ProblemSolution solve_problem(const ProblemFile& p);

}  // namespace dtower
