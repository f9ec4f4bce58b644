#include "dtower/relations.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "dtower/blocks.hpp"
#include "dtower/forms.hpp"
#include "dtower/operators.hpp"

namespace dtower {

namespace {

std::string monomial_string(const Monomial& m, std::size_t nvars) {
  return dtower::to_string(LaurentPoly::from_terms(nvars, {{m, Rational(1)}}));
}

void check_comparable(const QExpansion& a, const QExpansion& b, const char* who) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument(std::string(who) + ": variable counts differ");
  if (a.meta() && b.meta()) {
    if (a.meta()->weight2 != b.meta()->weight2 || a.meta()->index != b.meta()->index)
      throw MetaError(std::string(who) + ": weights or indices differ");
  }
}

int common_trunc(const std::vector<QExpansion>& forms) {
  int t = forms.front().trunc24();
  for (const auto& f : forms) t = std::min(t, f.trunc24());
  return t;
}

// Feeds the coefficient rows of the forms at q-order e into the reducer.
// Returns false once the reducer reached full rank.
bool feed_level(RowReducer& red, const std::vector<QExpansion>& forms, int e) {
  std::unordered_map<Monomial, std::vector<Rational>, MonomialHash> rows;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    auto it = forms[j].coefficients().find(e);
    if (it == forms[j].coefficients().end()) continue;
    for (const auto& [m, c] : it->second.terms()) {
      auto [r, inserted] = rows.try_emplace(m);
      if (inserted) r->second.assign(forms.size(), Rational(0));
      r->second[j] = c;
    }
  }
  // Deterministic row order keeps the reduction reproducible.
  std::vector<Monomial> keys;
  keys.reserve(rows.size());
  for (const auto& [m, r] : rows) keys.push_back(m);
  std::sort(keys.begin(), keys.end(), GradLexLess{});
  for (const auto& m : keys) {
    red.add(std::move(rows[m]));
    if (red.rank() == red.ncols()) return false;
  }
  return true;
}

std::vector<int> all_levels(const std::vector<QExpansion>& forms, int trunc) {
  std::vector<int> out;
  for (const auto& f : forms)
    for (const auto& [e, p] : f.coefficients())
      if (e < trunc) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string term_string(const Rational& c, const std::string& label, bool first) {
  std::string s;
  Rational a = c;
  if (!first) s += a < 0 ? " - " : " + ";
  else if (a < 0) s += "-";
  if (a < 0) a = -a;
  if (a != 1) s += dtower::to_string(a) + "*";
  return s + label;
}

}  // namespace

std::string IdentityReport::to_string(std::size_t nvars) const {
  std::ostringstream os;
  if (equal) {
    os << "equal below " << q_power_string(compared_trunc24);
  } else if (witness) {
    os << "differ at " << q_power_string(witness->q24) << " " << monomial_string(witness->monomial, nvars) << ": "
       << dtower::to_string(witness->lhs) << " vs " << dtower::to_string(witness->rhs);
  } else {
    os << "differ";
  }
  return os.str();
}

IdentityReport check_identity(const QExpansion& lhs, const QExpansion& rhs) {
  check_comparable(lhs, rhs, "check_identity");
  IdentityReport rep;
  rep.compared_trunc24 = std::min(lhs.trunc24(), rhs.trunc24());
  for (int e : all_levels({lhs, rhs}, rep.compared_trunc24)) {
    const LaurentPoly a = lhs.coefficient(e), b = rhs.coefficient(e);
    if (a == b) continue;
    // First monomial in gradlex order where the two differ.
    const LaurentPoly d = a - b;
    const Monomial m = d.terms().front().first;
    rep.witness = Mismatch{e, m, a.coefficient(m), b.coefficient(m)};
    return rep;
  }
  rep.equal = true;
  return rep;
}

bool RowReducer::add(std::vector<Rational> r) {
  if (r.size() != ncols_) throw std::invalid_argument("RowReducer: row length differs from column count");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (r[p] == 0) continue;
    const Rational f = r[p];
    for (std::size_t c = p; c < ncols_; ++c)
      if (rows_[i][c] != 0) r[c] -= f * rows_[i][c];
  }
  std::size_t p = 0;
  while (p < ncols_ && r[p] == 0) ++p;
  if (p == ncols_) return false;
  const Rational inv = 1 / r[p];
  for (std::size_t c = p; c < ncols_; ++c) r[c] *= inv;
  for (auto& row : rows_) {
    if (row[p] == 0) continue;
    const Rational f = row[p];
    for (std::size_t c = p; c < ncols_; ++c)
      if (r[c] != 0) row[c] -= f * r[c];
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
  pivots_.insert(pivots_.begin() + static_cast<long>(pos), p);
  rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(r));
  return true;
}

std::vector<std::vector<Rational>> RowReducer::nullspace() const {
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (std::binary_search(pivots_.begin(), pivots_.end(), f)) continue;
    std::vector<Rational> v(ncols_, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) v[pivots_[i]] = -rows_[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::string> SolutionSpace::formulas() const {
  std::vector<std::string> out;
  for (std::size_t p : pivots) {
    std::string s = labels[p] + " = ";
    bool first = true;
    for (std::size_t j = 0; j < free.size(); ++j) {
      const Rational& c = basis[j][p];
      if (c == 0) continue;
      s += term_string(c, labels[free[j]], first);
      first = false;
    }
    if (first) s += "0";
    out.push_back(s);
  }
  return out;
}

std::string SolutionSpace::to_string() const {
  std::ostringstream os;
  os << "solution space of dimension " << dimension() << " (constraints below " << q_power_string(common_trunc24)
     << ")\n";
  for (const auto& f : formulas()) os << "  " << f << "\n";
  if (full_vanishing_checked) os << "  full vanishing: " << (full_vanishing ? "yes" : "NO") << "\n";
  return os.str();
}

std::vector<std::string> dependent_formulas(const SolutionSpace& s, std::size_t nparams) {
  const std::size_t total = s.labels.size();
  if (nparams > total) throw std::invalid_argument("dependent_formulas: more parameters than coordinates");
  std::vector<std::vector<Rational>> columns;
  for (std::size_t i = 0; i < nparams; ++i) {
    std::map<std::size_t, Rational> fixed;
    for (std::size_t j = 0; j < nparams; ++j) fixed[j] = i == j ? 1 : 0;
    auto x = fix_coordinates(s, fixed);
    if (!x) throw std::invalid_argument("dependent_formulas: " + s.labels[i] + " cannot be chosen freely");
    columns.push_back(*x);
  }
  std::vector<std::string> out;
  for (std::size_t d = nparams; d < total; ++d) {
    std::string rhs = s.labels[d] + " = ";
    bool first = true;
    for (std::size_t i = 0; i < nparams; ++i) {
      const Rational& c = columns[i][d];
      if (c == 0) continue;
      rhs += term_string(c, s.labels[i], first);
      first = false;
    }
    if (first) rhs += "0";
    out.push_back(rhs);
  }
  return out;
}

QExpansion linear_combination(const std::vector<QExpansion>& forms, const std::vector<Rational>& coeffs) {
  if (forms.empty() || forms.size() != coeffs.size())
    throw std::invalid_argument("linear_combination: need one coefficient per form");
  QExpansion out(forms.front().nvars(), common_trunc(forms));
  for (std::size_t j = 0; j < forms.size(); ++j)
    if (coeffs[j] != 0) out = out + coeffs[j] * forms[j].with_meta(std::nullopt);
  return out;
}

SolutionSpace solve_relation(const RelationProblem& p) {
  if (p.forms.empty()) throw std::invalid_argument("solve_relation: no forms given");
  if (!p.labels.empty() && p.labels.size() != p.forms.size())
    throw std::invalid_argument("solve_relation: one label per form required");
  for (const auto& f : p.forms) check_comparable(p.forms.front(), f, "solve_relation");
  SolutionSpace s;
  for (std::size_t j = 0; j < p.forms.size(); ++j)
    s.labels.push_back(p.labels.empty() ? "a" + std::to_string(j + 1) : p.labels[j]);
  s.common_trunc24 = common_trunc(p.forms);
  std::vector<int> levels = p.constrained_q24;
  if (levels.empty()) levels = all_levels(p.forms, s.common_trunc24);
  for (int e : levels)
    if (e >= s.common_trunc24)
      throw PrecisionError("solve_relation: constrained order " + q_power_string(e) + " is beyond the known precision");

  RowReducer red(p.forms.size());
  for (int e : levels)
    if (!feed_level(red, p.forms, e)) break;
  s.pivots = red.pivots();
  s.basis = red.nullspace();
  for (std::size_t f = 0; f < p.forms.size(); ++f)
    if (!std::binary_search(s.pivots.begin(), s.pivots.end(), f)) s.free.push_back(f);

  if (p.require_full_vanishing) {
    s.full_vanishing_checked = true;
    for (const auto& v : s.basis)
      if (!linear_combination(p.forms, v).is_zero()) s.full_vanishing = false;
  }
  return s;
}

std::optional<std::vector<Rational>> fix_coordinates(const SolutionSpace& s,
                                                     const std::map<std::size_t, Rational>& fixed) {
  const std::size_t d = s.dimension();
  // Unknowns t_0..t_{d-1} with x = sum t_j basis[j]; augmented column d.
  RowReducer red(d + 1);
  for (const auto& [coord, value] : fixed) {
    if (coord >= s.labels.size()) throw std::invalid_argument("fix_coordinates: coordinate out of range");
    std::vector<Rational> row(d + 1);
    for (std::size_t j = 0; j < d; ++j) row[j] = s.basis[j][coord];
    row[d] = value;
    red.add(std::move(row));
  }
  if (!red.pivots().empty() && red.pivots().back() == d) return std::nullopt;
  if (red.rank() < d) throw std::invalid_argument("fix_coordinates: fixed coordinates do not determine a unique solution");
  std::vector<Rational> t(d);
  for (std::size_t i = 0; i < red.rank(); ++i) t[red.pivots()[i]] = red.rows()[i][d];
  std::vector<Rational> x(s.labels.size(), Rational(0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += t[j] * s.basis[j][c];
  return x;
}

std::size_t rank_of(const std::vector<QExpansion>& forms) {
  if (forms.empty()) return 0;
  for (const auto& f : forms)
    if (f.nvars() != forms.front().nvars()) throw std::invalid_argument("rank_of: variable counts differ");
  RowReducer red(forms.size());
  for (int e : all_levels(forms, common_trunc(forms)))
    if (!feed_level(red, forms, e)) break;
  return red.rank();
}

std::string RankCertificate::to_string() const {
  std::ostringstream os;
  os << "D" << n << " weight " << weight << " index " << index << ": rank " << rank << " of " << expected
     << (full_rank() ? " (independent" : " (DEPENDENT") << " below " << q_power_string(trunc24) << ")";
  return os.str();
}

std::vector<std::string> generator_monomials(int n, int weight, int index) {
  const auto gens = tower_generators(n);
  std::vector<JacobiFormMeta> metas;
  for (const auto& g : gens) metas.push_back(tower_meta(g, n));
  std::vector<std::string> out;
  std::vector<int> e(gens.size(), 0);
  auto emit = [&](int w2_used) {
    const int rest2 = 2 * weight - w2_used;  // doubled weight left for E4^a E6^b
    if (rest2 < 0 || rest2 % 4 != 0) return;
    const int rest = rest2 / 2;
    for (int b = 0; 6 * b <= rest; ++b) {
      if ((rest - 6 * b) % 4 != 0) continue;
      const int a = (rest - 6 * b) / 4;
      std::string label;
      auto append = [&](const std::string& name, int k) {
        if (k == 0) return;
        if (!label.empty()) label += "*";
        label += name;
        if (k > 1) label += "^" + std::to_string(k);
      };
      append("E4", a);
      append("E6", b);
      for (std::size_t j = 0; j < gens.size(); ++j) append(gens[j], e[j]);
      out.push_back(label.empty() ? "1" : label);
    }
  };
  auto rec = [&](auto&& self, std::size_t j, Rational idx_left, int w2_used) -> void {
    if (j == gens.size()) {
      if (idx_left == 0) emit(w2_used);
      return;
    }
    for (int k = 0; metas[j].index * k <= idx_left; ++k) {
      e[j] = k;
      self(self, j + 1, idx_left - metas[j].index * k, w2_used + metas[j].weight2 * k);
    }
    e[j] = 0;
  };
  rec(rec, 0, Rational(index), 0);
  std::sort(out.begin(), out.end());
  return out;
}

QExpansion evaluate_monomial(const std::string& label, int n, int trunc24) {
  QExpansion out = QExpansion::constant(static_cast<std::size_t>(n), 1, trunc24);
  if (label == "1") return out;
  std::stringstream ss(label);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    int k = 1;
    const auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    if (caret != std::string::npos) k = std::stoi(factor.substr(caret + 1));
    QExpansion f = name == "E4"   ? eisenstein_E4(trunc24)
                   : name == "E6" ? eisenstein_E6(trunc24)
                                  : tower_form(name, n, trunc24);
    f = f.with_meta(std::nullopt);
    for (int i = 0; i < k; ++i) out = out * f;
  }
  return out.truncated(trunc24);
}

RankCertificate rank_certificate(const std::vector<std::string>& labels, const std::vector<QExpansion>& forms) {
  RankCertificate c;
  c.monomials = labels;
  c.expected = forms.size();
  c.rank = rank_of(forms);
  c.trunc24 = forms.empty() ? 0 : common_trunc(forms);
  return c;
}

RankCertificate independence_rank(int n, int weight, int index, int trunc24) {
  if (index < 0 || index > 2) throw std::invalid_argument("independence_rank: index must be 0, 1 or 2");
  const auto labels = generator_monomials(n, weight, index);
  std::vector<QExpansion> forms;
  for (const auto& l : labels) forms.push_back(evaluate_monomial(l, n, trunc24));
  RankCertificate c = rank_certificate(labels, forms);
  c.n = n;
  c.weight = weight;
  c.index = index;
  c.trunc24 = trunc24;
  return c;
}

ProbeResult divisibility_probe(const QExpansion& a) {
  ProbeResult r;
  const std::size_t n = a.nvars();
  if (n < 2) throw std::invalid_argument("divisibility_probe: needs at least two variables");
  for (const auto& [e, p] : a.coefficients())
    for (std::size_t i = 0; i < n; ++i)
      if (!restrict_variable(p, i).is_zero()) {
        r.reason = "does not vanish on z" + std::to_string(i + 1) + " = 0 at " + q_power_string(e);
        return r;
      }
  // a / omega^2 = a eta^{6n} / (theta(z_1)...theta(z_n))^2.
  const int k = 6 * static_cast<int>(n);
  QExpansion num = a.with_meta(std::nullopt) * eta_power(k, a.trunc24() + k).with_meta(std::nullopt);
  try {
    QExpansion q = divide_by_theta_product(divide_by_theta_product(num));
    if (a.meta()) {
      JacobiFormMeta m = *a.meta();
      m.weight2 += 2 * k / 3;
      m.index -= 2;
      q.set_meta(m);
    }
    r.divisible = true;
    r.quotient = std::move(q);
  } catch (const InexactDivision& ex) {
    r.reason = ex.what();
  }
  return r;
}

NamedForms mde_d8_weight8_forms(int trunc24) {
  const QExpansion phi = phi_0_1_D8(trunc24);
  const QExpansion e4 = eisenstein_E4(trunc24), e6 = eisenstein_E6(trunc24);
  const QExpansion h0 = modular_diff_H(phi);
  const QExpansion h2h0 = modular_diff_H(h0);
  NamedForms f;
  f.labels = {"H6H4H2H0(phi)", "H6H4(E4 phi)", "H6(E4 H0(phi))", "H6(E6 phi)", "E4 H2H0(phi)", "E6 H0(phi)",
              "E4^2 phi"};
  f.forms = {modular_diff_H(modular_diff_H(h2h0)),
             modular_diff_H(modular_diff_H(e4 * phi)),
             modular_diff_H(e4 * h0),
             modular_diff_H(e6 * phi),
             e4 * h2h0,
             e6 * h0,
             e4 * e4 * phi};
  return f;
}

NamedForms mde_a1_weight6_forms(int trunc24) {
  const QExpansion phi = phi_0_1(trunc24);
  const QExpansion e4 = eisenstein_E4(trunc24), e6 = eisenstein_E6(trunc24);
  const QExpansion h0 = modular_diff_H(phi);
  NamedForms f;
  f.labels = {"H4H2H0(phi)", "E4 H0(phi)", "H4(E4 phi)", "E6 phi"};
  f.forms = {modular_diff_H(modular_diff_H(h0)), e4 * h0, modular_diff_H(e4 * phi), e6 * phi};
  return f;
}

NamedForms mde_d8_index1_forms(int trunc24) {
  NamedForms f;
  f.labels = {"E6 phi_-4", "E4 phi_-2", "H0(phi_0)"};
  f.forms = {eisenstein_E6(trunc24) * phi_m4_1_D8(trunc24), eisenstein_E4(trunc24) * phi_m2_1_D8(trunc24),
             modular_diff_H(phi_0_1_D8(trunc24))};
  return f;
}

}  // namespace dtower
