#include "dtower/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dtower/cache.hpp"
#include "dtower/expression.hpp"
#include "dtower/serialize.hpp"
#include "dtower/suites.hpp"

namespace dtower {

namespace {

using nlohmann::json;

constexpr int Q = kQUnit;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int trunc_for(int prec) {
  if (prec < 0) throw UsageError("--prec must be >= 0");
  if (prec > 40) throw UsageError("--prec above 40 is not supported");
  return (prec + 1) * Q;
}

std::string meta_line(const QExpansion& a) {
  std::ostringstream os;
  os << "# nvars " << a.nvars();
  if (const auto& m = a.meta()) {
    os << ", weight " << to_string(m->weight()) << ", index " << to_string(m->index);
    if (!m->lattice.empty()) os << ", lattice " << m->lattice;
    if (!m->symmetry.empty()) os << ", symmetry " << m->symmetry;
  }
  return os.str();
}

// ---- compute ---------------------------------------------------------------

struct ComputeOptions {
  std::string expr;
  int n = 8;
  int prec = 3;
  std::string format = "text";
  bool no_cache = false;
  std::string output;
};

int cmd_compute(const ComputeOptions& o, std::ostream& out) {
  const int t = trunc_for(o.prec);
  if (o.n < 1 || o.n > 8) throw UsageError("--n must be between 1 and 8");
  std::string key;
  try {
    key = "compute|" + canonical_expression(o.expr) + "|n=" + std::to_string(o.n);
  } catch (const ExpressionError& e) {
    throw UsageError(e.what());
  }
  auto compute = [&](int trunc) { return evaluate_expression(o.expr, o.n, trunc); };
  QExpansion a;
  try {
    a = o.no_cache ? compute(t) : ExpansionCache(ExpansionCache::default_root()).get_or_compute(key, t, compute);
  } catch (const ExpressionError& e) {
    throw UsageError(e.what());
  }
  std::string text;
  if (o.format == "json") {
    text = to_json(a).dump(1) + "\n";
  } else {
    text = "# " + o.expr + "\n" + meta_line(a) + "\n" + to_string(a) + "\n";
  }
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output);
    if (!f) throw UsageError("cannot write " + o.output);
    f << text;
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string suite = "all";
  int prec = 3;
  unsigned threads = 0;
  std::string format = "text";
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  if (o.prec < 0) throw UsageError("--prec must be >= 0");
  if (o.suite != "all" && std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
    throw UsageError("unknown suite '" + o.suite + "'");
  SuiteReport r = run_suite(o.suite, o.prec, o.threads);
  if (o.format == "json") {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    out << json{{"suite", r.suite}, {"prec", r.prec}, {"passed", r.passed()}, {"checks", checks}}.dump(1) << "\n";
  } else {
    out << r.to_string();
  }
  return r.passed() ? kExitOk : kExitFailure;
}

// ---- solve -----------------------------------------------------------------

int cmd_solve(const std::string& file, const std::string& format, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(file + ": " + e.what());
  }
  ProblemFile p;
  ProblemSolution s;
  try {
    p = parse_problem(j);
    s = solve_problem(p);
  } catch (const ExpressionError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (format == "json") {
    json basis = json::array();
    for (const auto& v : s.space.basis) {
      json row = json::array();
      for (const auto& c : v) row.push_back(to_string(c));
      basis.push_back(row);
    }
    json o = {{"labels", s.space.labels},
              {"dimension", s.space.dimension()},
              {"pivots", s.space.pivots},
              {"free", s.space.free},
              {"basis", basis},
              {"formulas", s.space.formulas()},
              {"compared_below_q24", s.space.common_trunc24}};
    if (s.space.full_vanishing_checked) o["full_vanishing"] = s.space.full_vanishing;
    if (p.parameters > 0) {
      o["dependent"] = s.dependent;
      if (!s.parameter_note.empty()) o["parameter_note"] = s.parameter_note;
    }
    out << o.dump(1) << "\n";
  } else {
    out << s.space.to_string();
    if (p.parameters > 0) {
      out << "in terms of the first " << p.parameters << " coordinates:\n";
      for (const auto& d : s.dependent) out << "  " << d << "\n";
      if (!s.parameter_note.empty()) out << "  " << s.parameter_note << "\n";
    }
  }
  return kExitOk;
}

// ---- cache -----------------------------------------------------------------

int cmd_cache(const std::string& action, std::ostream& out) {
  ExpansionCache cache(ExpansionCache::default_root());
  if (action == "info") {
    auto entries = cache.list();
    out << "cache directory: " << cache.root().string() << "\n";
    out << entries.size() << " entries\n";
    for (const auto& e : entries)
      out << "  " << (e.valid ? "ok     " : "stale  ") << e.key << "  below " << q_power_string(e.trunc24) << "\n";
    return kExitOk;
  }
  if (action == "clear") {
    out << "removed " << cache.clear() << " entries from " << cache.root().string() << "\n";
    return kExitOk;
  }
  throw UsageError("unknown cache action '" + action + "'");
}

std::string forms_help() {
  std::ostringstream os;
  os << "Forms (names ignore case, '-' and '_'):\n";
  for (const auto& f : named_forms()) os << "  " << f.name << std::string(f.name.size() < 14 ? 14 - f.name.size() : 1, ' ') << f.description << "\n";
  os << "Operators: + - * / ^, H(x), T(x) Hecke T_-(2), D(x) divide by Delta, R(x, m) restrict to m variables.\n";
  return os.str();
}

}  // namespace

ProblemFile parse_problem(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("problem: expected a JSON object");
  ProblemFile p;
  try {
    p.n = j.value("n", 8);
    p.prec = j.value("prec", 3);
    p.full_vanishing = j.value("full_vanishing", true);
    p.parameters = j.value("parameters", 0);
    if (!j.contains("forms") || !j["forms"].is_array()) throw std::invalid_argument("problem: 'forms' must be an array");
    p.forms = j["forms"].get<std::vector<std::string>>();
    if (j.contains("labels")) p.labels = j["labels"].get<std::vector<std::string>>();
    if (j.contains("vanish_orders")) p.vanish_orders = j["vanish_orders"].get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("problem: ") + e.what());
  }
  if (p.forms.empty()) throw std::invalid_argument("problem: empty form list");
  if (!p.labels.empty() && p.labels.size() != p.forms.size())
    throw std::invalid_argument("problem: one label per form required");
  if (p.n < 1 || p.n > 8) throw std::invalid_argument("problem: n must be between 1 and 8");
  if (p.prec < 0 || p.prec > 40) throw std::invalid_argument("problem: prec must be between 0 and 40");
  if (p.parameters < 0 || static_cast<std::size_t>(p.parameters) > p.forms.size())
    throw std::invalid_argument("problem: parameters out of range");
  for (int v : p.vanish_orders)
    if (v < 0 || v > p.prec) throw std::invalid_argument("problem: vanish_orders must lie in [0, prec]");
  return p;
}

ProblemSolution solve_problem(const ProblemFile& p) {
  const int t = (p.prec + 1) * Q;
  RelationProblem rp;
  for (const auto& f : p.forms) rp.forms.push_back(evaluate_expression(f, p.n, t));
  rp.labels = p.labels.empty() ? p.forms : p.labels;
  for (int v : p.vanish_orders) rp.constrained_q24.push_back(v * Q);
  rp.require_full_vanishing = p.full_vanishing;
  ProblemSolution s{solve_relation(rp), {}, {}};
  if (p.parameters > 0) {
    try {
      s.dependent = dependent_formulas(s.space, static_cast<std::size_t>(p.parameters));
    } catch (const std::invalid_argument& e) {
      s.parameter_note = e.what();
    }
  }
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Jacobi forms for the D_n lattices: compute expansions, verify identities, solve relations."};
  app.name("dtower");
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  ComputeOptions co;
  auto* compute = app.add_subcommand("compute", "Print the expansion of a form or expression");
  compute->add_option("expr", co.expr, "Form name or expression, e.g. phi01-d8 or 'T(omega-d8)/omega-d8'")->required();
  compute->add_option("--n", co.n, "Rank n of the D_n tower (default 8)");
  compute->add_option("--prec", co.prec, "Highest q-power shown (default 3)");
  compute->add_option("--format", co.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  compute->add_flag("--no-cache", co.no_cache, "Neither read nor write the expansion cache");
  compute->add_option("-o,--output", co.output, "Write to a file instead of stdout");
  compute->footer(forms_help());

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite_positional;
  std::string names = "all";
  for (const auto& s : suite_names()) names += ", " + s;
  verify->add_option("name", suite_positional, "One of: " + names);
  verify->add_option("--suite", vo.suite, "Same as the positional argument");
  verify->add_option("--prec", vo.prec, "Check identities through q^prec (default 3)");
  verify->add_option("--threads", vo.threads, "Worker threads (default: all cores)");
  verify->add_option("--format", vo.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string problem_file, solve_format = "text";
  auto* solve = app.add_subcommand("solve", "Solve a linear relation problem given as JSON");
  solve->add_option("problem", problem_file, "Problem file")->required();
  solve->add_option("--format", solve_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string cache_action;
  auto* cache = app.add_subcommand("cache", "Inspect or clear the expansion cache (DTOWER_CACHE_DIR)");
  cache->add_option("action", cache_action, "info or clear")->required()->check(CLI::IsMember({"info", "clear"}));

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kLibraryVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests surface as ParseError with exit code 0.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kExitOk;
    }
    err << "dtower: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(co, out);
    if (*verify) {
      if (!suite_positional.empty()) vo.suite = suite_positional;
      return cmd_verify(vo, out);
    }
    if (*solve) return cmd_solve(problem_file, solve_format, out);
    if (*cache) return cmd_cache(cache_action, out);
  } catch (const UsageError& e) {
    err << "dtower: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "dtower: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dtower: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dtower
