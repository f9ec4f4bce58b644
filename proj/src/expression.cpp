#include "dtower/expression.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <regex>
#include <variant>

#include "dtower/blocks.hpp"
#include "dtower/forms.hpp"
#include "dtower/operators.hpp"

namespace dtower {

namespace {

constexpr int Q = kQUnit;

using Builder = std::function<QExpansion(int n, int trunc24)>;

QExpansion on_rank(const QExpansion& d8, int n) { return n == 8 ? d8 : restrict_to_Dn(d8, n); }

Builder d8(QExpansion (*f)(int)) {
  return [f](int n, int t) { return on_rank(f(t), n); };
}

Builder tower(std::string name) {
  return [name](int n, int t) { return tower_form(name, n, t); };
}

Builder fixed(QExpansion (*f)(int)) {
  return [f](int, int t) { return f(t); };
}

Builder d2(QExpansion D2Family::*member) {
  return [member](int, int t) { return d2_family(t).*member; };
}

struct Entry {
  NamedFormInfo info;
  Builder build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"phi01-d8", "phi_{0,1} for D8, restricted to D_n when n < 8"}, d8(phi_0_1_D8)},
      {{"phim21-d8", "phi_{-2,1} for D8"}, d8(phi_m2_1_D8)},
      {{"phim41-d8", "phi_{-4,1} for D8"}, d8(phi_m4_1_D8)},
      {{"psi01-d8", "psi_{0,1} for D8 from the Hecke quotient of omega"}, d8(psi_0_1_D8)},
      {{"phitilde-d8", "(E4 theta_E8 - theta_D16+) / Delta, W(D8)-invariant"}, d8(phi_tilde_m4_1)},
      {{"theta-d8", "theta(z_1)...theta(z_8)"}, d8(theta_D8_product)},
      {{"theta-e8", "E8 theta series in D8 coordinates"}, d8(theta_E8)},
      {{"theta-d16", "D16+ theta series with z_9..z_16 = 0"}, d8(theta_D16plus_restricted)},
      {{"omega-d8", "theta discriminant of D8"}, [](int, int t) { return omega_Dn(8, t); }},
      {{"phi01", "tower generator phi_{0,1} of D_n"}, tower("phi_0_1")},
      {{"phim21", "tower generator phi_{-2,1} of D_n"}, tower("phi_-2_1")},
      {{"phim41", "tower generator phi_{-4,1} of D_n"}, tower("phi_-4_1")},
      {{"phim<2k>2", "index-2 tower form phi_{-2k,2} of D_n, 0 <= k <= n"}, nullptr},
      {{"omega", "theta discriminant theta(z_1)...theta(z_n) / eta^{3n}"}, tower("omega")},
      {{"omegasq", "square of the theta discriminant"}, tower("omega_sq")},
      {{"phi01-a1", "phi_{0,1} in one variable"}, fixed(phi_0_1)},
      {{"phim21-a1", "phi_{-2,1} in one variable"}, fixed(phi_m2_1)},
      {{"theta-a1", "odd Jacobi theta function"}, fixed(theta_odd)},
      {{"eta", "Dedekind eta"}, fixed(eta)},
      {{"delta", "Delta = eta^24"}, fixed(delta)},
      {{"E4", "Eisenstein series of weight 4"}, fixed(eisenstein_E4)},
      {{"E6", "Eisenstein series of weight 6"}, fixed(eisenstein_E6)},
      {{"G2", "quasimodular Eisenstein series of weight 2"}, fixed(eisenstein_G2)},
      {{"d2-phim41", "phi_{-4,1} of D2"}, d2(&D2Family::phi_m4_1)},
      {{"d2-phim21", "phi_{-2,1} of D2"}, d2(&D2Family::phi_m2_1)},
      {{"d2-phihat01", "phi_{0,1}(w1) phi_{0,1}(w2) of D2"}, d2(&D2Family::phi_hat_0_1)},
      {{"d2-phi01", "phi_{0,1} of D2"}, d2(&D2Family::phi_0_1)},
      {{"d2-omega", "theta discriminant of D2 from the w-coordinates"}, d2(&D2Family::omega)},
  };
  return r;
}

const std::regex& index2_pattern() {
  static const std::regex re(R"(phi(m?)(\d+)2)");
  return re;
}

// Tower name for phim<2k>2, or nullopt.
std::optional<std::string> index2_name(const std::string& canon) {
  std::smatch m;
  if (!std::regex_match(canon, m, index2_pattern())) return std::nullopt;
  const std::string w = m[2];
  if (m[1].length() == 0 && w != "0") return std::nullopt;
  return "phi_" + std::string(w == "0" ? "" : "-") + w + "_2";
}

const std::map<std::string, const Entry*>& lookup() {
  static const auto m = [] {
    std::map<std::string, const Entry*> out;
    for (const auto& e : registry())
      if (e.build) out[canonical_name(e.info.name)] = &e;
    return out;
  }();
  return m;
}

bool is_function(const std::string& canon) { return canon == "h" || canon == "t" || canon == "d" || canon == "r"; }

// ---- syntax tree -----------------------------------------------------------

struct Node {
  enum Kind { number, name, neg, add, sub, mul, div, pow, call } kind;
  Rational value = 0;
  std::string text;  // canonical name or function
  long exponent = 0;
  std::vector<std::unique_ptr<Node>> kids;
};
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      Node::Kind k;
      if (eat('+')) k = Node::add;
      else if (eat('-')) k = Node::sub;
      else return left;
      NodePtr n = make(k);
      n->kids.push_back(std::move(left));
      n->kids.push_back(term());
      left = std::move(n);
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      Node::Kind k;
      if (eat('*')) k = Node::mul;
      else if (eat('/')) k = Node::div;
      else return left;
      NodePtr n = make(k);
      n->kids.push_back(std::move(left));
      n->kids.push_back(unary());
      left = std::move(n);
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      NodePtr n = make(Node::neg);
      n->kids.push_back(unary());
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (!eat('^')) return base;
    skip();
    bool negative = eat('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    NodePtr n = make(Node::pow);
    n->exponent = std::stol(s_.substr(start, pos_ - start)) * (negative ? -1 : 1);
    n->kids.push_back(std::move(base));
    return n;
  }

  // Identifier characters include '-' so that "phi01-d8" reads as one name; the
  // longest prefix that names something wins, otherwise the name stops at the first '-'.
  std::string identifier() {
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_' || s_[end] == '-'))
      ++end;
    std::size_t best = pos_;
    for (std::size_t cut = end; cut > pos_; --cut) {
      if (cut < end && s_[cut] != '-') continue;
      const std::string cand = s_.substr(pos_, cut - pos_);
      if (cand.back() == '-') continue;
      if (is_named_form(cand) || is_function(canonical_name(cand))) {
        best = cut;
        break;
      }
    }
    if (best == pos_) {
      best = pos_;
      while (best < end && s_[best] != '-') ++best;
    }
    std::string out = s_.substr(pos_, best - pos_);
    pos_ = best;
    return out;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      NodePtr n = make(Node::number);
      n->value = parse_rational(s_.substr(start, pos_ - start));
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::string raw = identifier();
    const std::string canon = canonical_name(raw);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(' && is_function(canon)) {
      ++pos_;
      NodePtr n = make(Node::call);
      n->text = canon;
      n->kids.push_back(expr());
      if (canon == "r") {
        if (!eat(',')) fail("R(x, m) needs a variable count");
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        n->exponent = std::stol(s_.substr(start, pos_ - start));
      }
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (!is_named_form(raw)) fail("unknown form '" + raw + "'");
    NodePtr n = make(Node::name);
    n->text = canon;
    return n;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string print(const Node& n) {
  switch (n.kind) {
    case Node::number: return to_string(n.value);
    case Node::name: return n.text;
    case Node::neg: return "(-" + print(*n.kids[0]) + ")";
    case Node::add: return "(" + print(*n.kids[0]) + "+" + print(*n.kids[1]) + ")";
    case Node::sub: return "(" + print(*n.kids[0]) + "-" + print(*n.kids[1]) + ")";
    case Node::mul: return "(" + print(*n.kids[0]) + "*" + print(*n.kids[1]) + ")";
    case Node::div: return "(" + print(*n.kids[0]) + "/" + print(*n.kids[1]) + ")";
    case Node::pow: return "(" + print(*n.kids[0]) + "^" + std::to_string(n.exponent) + ")";
    case Node::call:
      return n.text + "(" + print(*n.kids[0]) + (n.text == "r" ? "," + std::to_string(n.exponent) : "") + ")";
  }
  return {};
}

// ---- evaluation ------------------------------------------------------------

using Value = std::variant<Rational, QExpansion>;

QExpansion as_series(const Value& v, int t) {
  if (const auto* s = std::get_if<QExpansion>(&v)) return *s;
  return QExpansion::constant(0, std::get<Rational>(v), t);
}

QExpansion need_series(const Value& v, const char* op) {
  if (const auto* s = std::get_if<QExpansion>(&v)) return *s;
  throw ExpressionError(std::string(op) + " needs a series argument");
}

int round_up_q(int t) { return (t + Q - 1) / Q * Q; }

class Evaluator {
 public:
  explicit Evaluator(int n) : n_(n) {}

  Value eval(const Node& node, int t) {
    switch (node.kind) {
      case Node::number: return node.value;
      case Node::name: return named_form(node.text, n_, t);
      case Node::neg: {
        Value v = eval(*node.kids[0], t);
        if (auto* r = std::get_if<Rational>(&v)) return Rational(-*r);
        return -std::get<QExpansion>(v);
      }
      case Node::add:
      case Node::sub: {
        Value a = eval(*node.kids[0], t), b = eval(*node.kids[1], t);
        const int sign = node.kind == Node::add ? 1 : -1;
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
          return Rational(std::get<Rational>(a) + sign * std::get<Rational>(b));
        QExpansion sa = as_series(a, t), sb = as_series(b, t);
        return sign > 0 ? sa + sb : sa - sb;
      }
      case Node::mul: {
        Value a = eval(*node.kids[0], t), b = eval(*node.kids[1], t);
        if (auto* ra = std::get_if<Rational>(&a)) {
          if (auto* rb = std::get_if<Rational>(&b)) return Rational(*ra * *rb);
          return *ra * std::get<QExpansion>(b);
        }
        if (auto* rb = std::get_if<Rational>(&b)) return std::get<QExpansion>(a) * *rb;
        return std::get<QExpansion>(a) * std::get<QExpansion>(b);
      }
      case Node::div: {
        Value b = eval(*node.kids[1], t);
        if (auto* rb = std::get_if<Rational>(&b)) {
          if (*rb == 0) throw ExpressionError("division by zero");
          Value a = eval(*node.kids[0], t);
          if (auto* ra = std::get_if<Rational>(&a)) return Rational(*ra / *rb);
          return std::get<QExpansion>(a) * Rational(1 / *rb);
        }
        // The quotient loses the valuation of the denominator.
        const int v = std::max(0, std::get<QExpansion>(b).valuation24());
        if (v > 0) b = eval(*node.kids[1], t + v);
        Value a = eval(*node.kids[0], t + v);
        return as_series(a, t + v) / std::get<QExpansion>(b);
      }
      case Node::pow: {
        Value base = eval(*node.kids[0], t);
        if (auto* r = std::get_if<Rational>(&base)) {
          if (*r == 0 && node.exponent < 0) throw ExpressionError("division by zero");
          Rational out = 1;
          for (long i = 0; i < std::abs(node.exponent); ++i) out *= *r;
          return node.exponent < 0 ? Rational(1 / out) : out;
        }
        if (node.exponent < 0) throw ExpressionError("negative powers of series are not supported; use '/'");
        if (node.exponent == 0) return Rational(1);
        const QExpansion s = std::get<QExpansion>(base);
        QExpansion out = s;
        for (long i = 1; i < node.exponent; ++i) out = out * s;
        return out;
      }
      case Node::call: {
        const std::string& f = node.text;
        if (f == "t") return hecke_T2(need_series(eval(*node.kids[0], 2 * round_up_q(t)), "T"));
        if (f == "d") return divide_by_delta(need_series(eval(*node.kids[0], t + Q), "D"));
        QExpansion x = need_series(eval(*node.kids[0], t), f == "h" ? "H" : "R");
        if (f == "h") return modular_diff_H(x);
        const int m = static_cast<int>(node.exponent);
        if (m < 0 || static_cast<std::size_t>(m) > x.nvars()) throw ExpressionError("R(x, m) needs 0 <= m <= nvars");
        if (x.nvars() == 8 && m >= 2) return restrict_to_Dn(x, m);
        while (x.nvars() > static_cast<std::size_t>(m)) x = restrict_last(x);
        return x;
      }
    }
    throw ExpressionError("bad expression node");
  }

 private:
  int n_;
};

}  // namespace

std::string canonical_name(const std::string& name) {
  std::string out;
  for (char c : name)
    if (c != '-' && c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const std::vector<NamedFormInfo>& named_forms() {
  static const auto v = [] {
    std::vector<NamedFormInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return v;
}

bool is_named_form(const std::string& name) {
  const std::string c = canonical_name(name);
  return lookup().count(c) > 0 || index2_name(c).has_value();
}

QExpansion named_form(const std::string& name, int n, int trunc24) {
  const std::string c = canonical_name(name);
  if (auto it = lookup().find(c); it != lookup().end()) return it->second->build(n, trunc24);
  if (auto t = index2_name(c)) return tower_form(*t, n, trunc24);
  throw ExpressionError("unknown form '" + name + "'");
}

std::string canonical_expression(const std::string& expr) { return print(*Parser(expr).parse()); }

QExpansion evaluate_expression(const std::string& expr, int n, int trunc24) {
  if (trunc24 <= 0) throw std::invalid_argument("evaluate_expression: trunc must be positive");
  const NodePtr tree = Parser(expr).parse();
  Evaluator ev(n);
  int t = trunc24;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Value v = ev.eval(*tree, t);
    if (auto* r = std::get_if<Rational>(&v)) return QExpansion::constant(0, *r, trunc24);
    QExpansion s = std::get<QExpansion>(v);
    if (s.trunc24() >= trunc24) return s.truncated(trunc24);
    t += std::max(Q, trunc24 - s.trunc24());
  }
  throw PrecisionError("expression '" + expr + "' does not reach the requested precision");
}

}  // namespace dtower
