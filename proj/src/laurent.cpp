#include "dtower/laurent.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>

namespace dtower {

namespace {

void check_nvars(std::size_t nvars) {
  if (nvars > kMaxVars)
    throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables are supported, got " +
                                std::to_string(nvars));
}

void check_same_nvars(const LaurentPoly& a, const LaurentPoly& b, const char* op) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument(std::string(op) + ": variable count mismatch (" + std::to_string(a.nvars()) +
                                " vs " + std::to_string(b.nvars()) + ")");
}

Monomial::Exponent narrow(long v) {
  if (v < std::numeric_limits<Monomial::Exponent>::min() || v > std::numeric_limits<Monomial::Exponent>::max())
    throw std::overflow_error("exponent out of representable range");
  return static_cast<Monomial::Exponent>(v);
}

// Sorted merge of two canonical term lists: a + sign * b.
std::vector<LaurentPoly::Term> merge(const std::vector<LaurentPoly::Term>& a, const std::vector<LaurentPoly::Term>& b,
                                     int sign) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  GradLexLess less;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && less(ia->first, ib->first))) {
      out.push_back(*ia++);
    } else if (ia == a.end() || less(ib->first, ia->first)) {
      out.emplace_back(ib->first, sign > 0 ? ib->second : Rational(-ib->second));
      ++ib;
    } else {
      Rational c = sign > 0 ? Rational(ia->second + ib->second) : Rational(ia->second - ib->second);
      if (c != 0) out.emplace_back(ia->first, std::move(c));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

Monomial Monomial::from_doubled(const std::vector<int>& exps) {
  check_nvars(exps.size());
  Monomial m;
  for (std::size_t i = 0; i < exps.size(); ++i) m.doubled[i] = narrow(exps[i]);
  return m;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t w[2];
  static_assert(sizeof(m.doubled) == sizeof(w));
  std::memcpy(w, m.doubled.data(), sizeof(w));
  std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ULL ^ (w[1] + 0x7F4A7C159E3779B9ULL + (w[0] << 6) + (w[0] >> 2));
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ULL;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

LaurentPoly::LaurentPoly(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c) {
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.emplace_back(Monomial{}, c);
  return p;
}

LaurentPoly LaurentPoly::term(std::size_t nvars, const std::vector<int>& doubled, const Rational& c) {
  if (doubled.size() != nvars) throw std::invalid_argument("monomial length does not match variable count");
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.emplace_back(Monomial::from_doubled(doubled), c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  LaurentPoly p(nvars);
  for (const auto& [m, c] : terms)
    for (std::size_t i = nvars; i < kMaxVars; ++i)
      if (m.doubled[i] != 0) throw std::invalid_argument("monomial uses a variable beyond nvars");
  GradLexLess less;
  std::sort(terms.begin(), terms.end(), [&](const Term& x, const Term& y) { return less(x.first, y.first); });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

Rational LaurentPoly::coefficient(const Monomial& m) const {
  GradLexLess less;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [&](const Term& t, const Monomial& key) { return less(t.first, key); });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

Rational LaurentPoly::value_at_one() const {
  Rational s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

const LaurentPoly::Term& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return terms_.back();
}

bool LaurentPoly::is_canonical() const {
  GradLexLess less;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].second == 0) return false;
    if (i > 0 && !less(terms_[i - 1].first, terms_[i].first)) return false;
    for (std::size_t v = nvars_; v < kMaxVars; ++v)
      if (terms_[i].first.doubled[v] != 0) return false;
  }
  return true;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  check_same_nvars(*this, other, "add");
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, +1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  check_same_nvars(*this, other, "subtract");
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

TermAccumulator::TermAccumulator(std::size_t nvars, std::size_t expected_terms) : nvars_(nvars) {
  check_nvars(nvars);
  if (expected_terms) acc_.reserve(expected_terms);
}

void TermAccumulator::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add_shifted(const LaurentPoly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  if (p.nvars() != nvars_) throw std::invalid_argument("accumulate: variable count mismatch");
  Rational tmp;
  for (const auto& [pm, pc] : p.terms()) {
    tmp = pc * c;
    auto [it, inserted] = acc_.try_emplace(pm + m, tmp);
    if (!inserted) it->second += tmp;
  }
}

LaurentPoly TermAccumulator::finish() {
  LaurentPoly p(nvars_);
  p.terms_.reserve(acc_.size());
  for (auto& [m, c] : acc_)
    if (c != 0) p.terms_.emplace_back(m, std::move(c));
  acc_.clear();
  GradLexLess less;
  std::sort(p.terms_.begin(), p.terms_.end(),
            [&](const LaurentPoly::Term& x, const LaurentPoly::Term& y) { return less(x.first, y.first); });
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_nvars(a, b, "multiply");
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.nvars());
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    // Shifting by a monomial preserves the monomial order.
    LaurentPoly out(a.nvars());
    const auto& [sm, sc] = small.terms().front();
    out.terms_.reserve(large.size());
    for (const auto& [m, c] : large.terms()) out.terms_.emplace_back(m + sm, c * sc);
    return out;
  }
  TermAccumulator acc(a.nvars(), std::min<std::size_t>(a.size() * b.size(), 1u << 22));
  for (const auto& [m, c] : small.terms()) acc.add_shifted(large, m, c);
  return acc.finish();
}

LaurentPoly multiply(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
  check_same_nvars(num, den, "exact divide");
  if (den.is_zero()) throw std::invalid_argument("exact divide: division by the zero polynomial");
  const std::size_t n = num.nvars();
  if (num.is_zero()) return LaurentPoly(n);

  // Newton polytopes add under multiplication, so every quotient exponent lies
  // in the box [min(num) - min(den), max(num) - max(den)] coordinatewise.
  std::array<int, kMaxVars> lo{}, hi{};
  {
    std::array<int, kMaxVars> nmin, nmax, dmin, dmax;
    nmin.fill(std::numeric_limits<int>::max());
    dmin.fill(std::numeric_limits<int>::max());
    nmax.fill(std::numeric_limits<int>::min());
    dmax.fill(std::numeric_limits<int>::min());
    for (const auto& [m, c] : num.terms())
      for (std::size_t i = 0; i < n; ++i) {
        nmin[i] = std::min<int>(nmin[i], m.doubled[i]);
        nmax[i] = std::max<int>(nmax[i], m.doubled[i]);
      }
    for (const auto& [m, c] : den.terms())
      for (std::size_t i = 0; i < n; ++i) {
        dmin[i] = std::min<int>(dmin[i], m.doubled[i]);
        dmax[i] = std::max<int>(dmax[i], m.doubled[i]);
      }
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = nmin[i] - dmin[i];
      hi[i] = nmax[i] - dmax[i];
      if (lo[i] > hi[i]) return std::nullopt;
    }
  }

  if (den.size() == 1) {
    const auto& [dm, dc] = den.terms().front();
    LaurentPoly q(n);
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(num.size());
    for (const auto& [m, c] : num.terms()) terms.emplace_back(m - dm, c / dc);
    return LaurentPoly::from_terms(n, std::move(terms));
  }

  struct Greater {
    bool operator()(const Monomial& a, const Monomial& b) const { return GradLexLess{}(b, a); }
  };
  std::map<Monomial, Rational, Greater> rem;
  for (const auto& [m, c] : num.terms()) rem.emplace_hint(rem.begin(), m, c);

  const auto& [lead_m, lead_c] = den.leading_term();
  std::vector<LaurentPoly::Term> quotient;
  Rational t, tmp;
  while (!rem.empty()) {
    auto top = rem.begin();
    const Monomial qm = top->first - lead_m;
    for (std::size_t i = 0; i < n; ++i)
      if (qm.doubled[i] < lo[i] || qm.doubled[i] > hi[i]) return std::nullopt;
    t = top->second / lead_c;
    rem.erase(top);
    // The leading product cancels exactly; subtract the rest of t * den.
    const auto& dterms = den.terms();
    for (std::size_t k = 0; k + 1 < dterms.size(); ++k) {
      tmp = t * dterms[k].second;
      auto [it, inserted] = rem.try_emplace(dterms[k].first + qm);
      if (inserted) {
        it->second = -tmp;
      } else {
        it->second -= tmp;
        if (it->second == 0) rem.erase(it);
      }
    }
    quotient.emplace_back(qm, t);
  }
  std::reverse(quotient.begin(), quotient.end());
  LaurentPoly q = LaurentPoly::from_terms(n, std::move(quotient));
  return q;
}

LaurentPoly exact_divide(const LaurentPoly& num, const LaurentPoly& den) {
  auto q = try_exact_divide(num, den);
  if (!q) throw InexactDivision("exact divide: divisor does not divide the dividend");
  return std::move(*q);
}

LaurentPoly substitute_linear(const LaurentPoly& p, const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = p.nvars();
  if (a.size() != n) throw std::invalid_argument("substitute_linear: matrix size does not match variable count");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("substitute_linear: matrix is not square");
  {
    // Invertibility by exact elimination.
    auto m = a;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) throw std::invalid_argument("substitute_linear: matrix is singular");
      std::swap(m[piv], m[col]);
      for (std::size_t r = col + 1; r < n; ++r) {
        if (m[r][col] == 0) continue;
        Rational f = m[r][col] / m[col][col];
        for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      }
    }
  }
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial out;
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = 0;
      for (std::size_t i = 0; i < n; ++i) v += a[i][j] * m.doubled[i];
      if (!is_integer(v))
        throw std::invalid_argument("substitute_linear: image exponent is not in (1/2)Z");
      out.doubled[j] = narrow(v.get_num().get_si());
    }
    terms.emplace_back(out, c);
  }
  return LaurentPoly::from_terms(n, std::move(terms));
}

LaurentPoly restrict_variable(const LaurentPoly& p, std::size_t var) {
  if (var >= p.nvars()) throw std::out_of_range("restrict_variable: variable index out of range");
  const std::size_t n = p.nvars() - 1;
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial out;
    for (std::size_t i = 0, j = 0; i < p.nvars(); ++i)
      if (i != var) out.doubled[j++] = m.doubled[i];
    terms.emplace_back(out, c);
  }
  return LaurentPoly::from_terms(n, std::move(terms));
}

LaurentPoly act(const SignedPermutation& g, const LaurentPoly& p) {
  if (g.size() != p.nvars()) throw std::invalid_argument("act: group element size does not match variable count");
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial out;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      out.doubled[static_cast<std::size_t>(g.image(i))] = static_cast<Monomial::Exponent>(g.sign(i) * m.doubled[i]);
    terms.emplace_back(out, c);
  }
  return LaurentPoly::from_terms(p.nvars(), std::move(terms));
}

LaurentPoly embed(const LaurentPoly& p, std::size_t nvars, const std::vector<std::size_t>& positions) {
  if (positions.size() != p.nvars()) throw std::invalid_argument("embed: one position per variable required");
  for (auto pos : positions)
    if (pos >= nvars) throw std::out_of_range("embed: position out of range");
  LaurentPoly out(nvars);
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial e;
    for (std::size_t i = 0; i < positions.size(); ++i) e.doubled[positions[i]] = m.doubled[i];
    terms.emplace_back(e, c);
  }
  return LaurentPoly::from_terms(nvars, std::move(terms));
}

LaurentPoly scale_exponents(const LaurentPoly& p, int c) {
  if (c == 0) throw std::invalid_argument("scale_exponents: factor must be nonzero");
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& [m, coef] : p.terms()) {
    Monomial out;
    for (std::size_t i = 0; i < p.nvars(); ++i) out.doubled[i] = narrow(static_cast<long>(m.doubled[i]) * c);
    terms.emplace_back(out, coef);
  }
  return LaurentPoly::from_terms(p.nvars(), std::move(terms));
}

namespace {

const char* const kSubscripts[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
const char* const kSuperscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string digits(int v, const char* const table[]) {
  std::string s;
  for (char ch : std::to_string(v)) s += table[ch - '0'];
  return s;
}

std::string render_monomial(const Monomial& m, std::size_t nvars) {
  std::string s;
  for (std::size_t i = 0; i < nvars; ++i) {
    const int e = m.doubled[i];
    if (e == 0) continue;
    s += "ζ";
    s += nvars == 1 ? std::string{} : digits(static_cast<int>(i + 1), kSubscripts);
    if (e % 2 != 0) {
      s += "^(" + std::to_string(e) + "/2)";
    } else if (e < 0) {
      s += "⁻" + digits(-e / 2, kSuperscripts);
    } else if (e != 2) {
      s += digits(e / 2, kSuperscripts);
    }
  }
  return s;
}

}  // namespace

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  // Display order: by norm, then larger absolute exponents earlier, positive before negative.
  std::vector<const LaurentPoly::Term*> order;
  for (const auto& t : p.terms()) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [&](const LaurentPoly::Term* x, const LaurentPoly::Term* y) {
    const int nx = x->first.doubled_norm(), ny = y->first.doubled_norm();
    if (nx != ny) return nx < ny;
    std::array<int, kMaxVars> ax{}, ay{};
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      ax[i] = std::abs(x->first.doubled[i]);
      ay[i] = std::abs(y->first.doubled[i]);
    }
    if (ax != ay) return ax > ay;
    return x->first.doubled > y->first.doubled;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : order) {
    const Rational& c = t->second;
    const std::string mono = render_monomial(t->first, p.nvars());
    const bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "·";
      os << mono;
    }
  }
  return os.str();
}

}  // namespace dtower
