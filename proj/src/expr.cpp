#include "cgsf/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "cgsf/errors.hpp"
#include "cgsf/jet.hpp"

namespace cgsf {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tanh: return "tanh";
    case Op::Bump: return "bump";
    case Op::Plateau: return "plateau";
    case Op::Step: return "step";
    default: return "?";
  }
}

bool is_primitive(Op op) { return op == Op::Bump || op == Op::Plateau || op == Op::Step; }

bool is_func(Op op) {
  return op == Op::Exp || op == Op::Log || op == Op::Sin || op == Op::Cos || op == Op::Tanh;
}

Primitive to_primitive(Op op) {
  return op == Op::Bump ? Primitive::Bump : op == Op::Plateau ? Primitive::Plateau : Primitive::Step;
}

SmoothExpr make_node(ExprNode n) {
  std::string k;
  switch (n.op) {
    case Op::Const: k = num(n.value); break;
    case Op::Var: k = "x" + std::to_string(n.index); break;
    case Op::Eps: k = "eps"; break;
    case Op::EpsCut: k = "cut(" + num(n.value) + ")"; break;
    case Op::Add:
    case Op::Mul: {
      k = n.op == Op::Add ? "+(" : "*(";
      for (std::size_t i = 0; i < n.args.size(); ++i) k += (i ? "," : "") + n.args[i].key();
      k += ")";
      break;
    }
    case Op::Pow: k = "^(" + n.args[0].key() + "," + num(n.value) + ")"; break;
    default:
      k = std::string(op_name(n.op));
      if (is_primitive(n.op)) k += std::to_string(n.index);
      k += "(" + n.args[0].key() + ")";
  }
  n.key = std::move(k);
  return SmoothExpr(std::make_shared<const ExprNode>(std::move(n)));
}

double eval_func_const(Op op, double v) {
  switch (op) {
    case Op::Exp: return std::exp(v);
    case Op::Log: return std::log(v);
    case Op::Sin: return std::sin(v);
    case Op::Cos: return std::cos(v);
    case Op::Tanh: return std::tanh(v);
    default: return 0.0;
  }
}

// ---- canonical polynomial form -------------------------------------------

using Mono = std::vector<std::pair<std::string, double>>;

struct Poly {
  std::map<Mono, double> terms;
  std::map<std::string, SmoothExpr> factors;

  static Poly constant(double c) {
    Poly p;
    if (c != 0.0) p.terms[{}] = c;
    return p;
  }
  static Poly factor(const SmoothExpr& f, double e = 1.0) {
    Poly p;
    p.factors.emplace(f.key(), f);
    p.terms[{{f.key(), e}}] = 1.0;
    return p;
  }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty()); }
  double constant_value() const { return terms.empty() ? 0.0 : terms.begin()->second; }
};

void add_into(Poly& a, const Poly& b, double scale = 1.0) {
  for (const auto& [k, f] : b.factors) a.factors.emplace(k, f);
  for (const auto& [m, c] : b.terms) {
    double& slot = a.terms[m];
    slot += scale * c;
    if (slot == 0.0) a.terms.erase(m);
  }
}

bool is_cut_key(const std::map<std::string, SmoothExpr>& factors, const std::string& key) {
  auto it = factors.find(key);
  return it != factors.end() && it->second.op() == Op::EpsCut;
}

Mono mono_mul(const Mono& a, const Mono& b, const std::map<std::string, SmoothExpr>& factors) {
  Mono r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      double e = a[i].second + b[j].second;
      // An indicator of eps < c is idempotent.
      if (is_cut_key(factors, a[i].first) && a[i].second > 0 && b[j].second > 0) e = 1.0;
      if (e != 0.0) r.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  r.factors = a.factors;
  for (const auto& [k, f] : b.factors) r.factors.emplace(k, f);
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Mono m = mono_mul(ma, mb, r.factors);
      double& slot = r.terms[m];
      slot += ca * cb;
      if (slot == 0.0) r.terms.erase(m);
    }
  }
  return r;
}

Poly normalize(const SmoothExpr& e);
SmoothExpr rebuild(const Poly& p);

// Expands factors that are sums raised to natural powers, which can appear
// after merging fractional powers of the same sum.
Poly expand_sum_factors(Poly p) {
  for (int guard = 0; guard < 64; ++guard) {
    bool changed = false;
    Poly out;
    out.factors = p.factors;
    for (const auto& [m, c] : p.terms) {
      auto it = std::find_if(m.begin(), m.end(), [&](const auto& fe) {
        const SmoothExpr& f = p.factors.at(fe.first);
        return f.op() == Op::Add && fe.second > 0 && fe.second == std::floor(fe.second) && fe.second <= 12;
      });
      if (it == m.end()) {
        add_into(out, Poly{{{m, c}}, p.factors});
        continue;
      }
      changed = true;
      Mono rest = m;
      rest.erase(rest.begin() + (it - m.begin()));
      Poly base = normalize(p.factors.at(it->first));
      Poly prod = Poly{{{rest, c}}, p.factors};
      for (int k = 0; k < static_cast<int>(it->second); ++k) prod = poly_mul(prod, base);
      add_into(out, prod);
    }
    p = std::move(out);
    if (!changed) break;
  }
  return p;
}

bool positive_factor(const SmoothExpr& f) { return f.op() == Op::Eps || f.op() == Op::Exp; }

Poly normalize_pow(const SmoothExpr& base, double p) {
  if (p == 0.0) return Poly::constant(1.0);
  if (p == 1.0) return normalize(base);
  Poly nb = normalize(base);
  bool integer = p == std::floor(p);
  if (nb.terms.empty()) {
    if (p > 0) return Poly();
    return Poly::factor(make_pow(constant(0.0), 1.0), p);
  }
  if (nb.terms.size() == 1) {
    const auto& [m, c] = *nb.terms.begin();
    bool ok = integer || (c > 0 && std::all_of(m.begin(), m.end(), [&](const auto& fe) {
                            return positive_factor(nb.factors.at(fe.first));
                          }));
    if (ok) {
      Poly r;
      r.factors = nb.factors;
      Mono nm;
      for (const auto& [k, e] : m) {
        double ne = e * p;
        if (is_cut_key(nb.factors, k) && ne > 0) ne = 1.0;
        if (ne != 0.0) nm.emplace_back(k, ne);
      }
      r.terms[nm] = std::pow(c, p);
      if (m.empty() && !std::isfinite(r.terms[nm])) throw EvalDomainError("invalid constant power");
      return r;
    }
  }
  if (integer && p > 0 && p <= 12) {
    Poly r = Poly::constant(1.0);
    for (int k = 0; k < static_cast<int>(p); ++k) r = poly_mul(r, nb);
    return r;
  }
  return Poly::factor(rebuild(nb), p);
}

Poly normalize(const SmoothExpr& e) {
  const ExprNode& n = e.node();
  switch (n.op) {
    case Op::Const: return Poly::constant(n.value);
    case Op::Var:
    case Op::Eps:
    case Op::EpsCut: return Poly::factor(e);
    case Op::Add: {
      Poly r;
      for (const auto& a : n.args) add_into(r, normalize(a));
      return r;
    }
    case Op::Mul: {
      Poly r = Poly::constant(1.0);
      for (const auto& a : n.args) {
        r = poly_mul(r, normalize(a));
        if (r.terms.empty()) return r;
      }
      return expand_sum_factors(std::move(r));
    }
    case Op::Pow: return expand_sum_factors(normalize_pow(n.args[0], n.value));
    default: {
      SmoothExpr arg = rebuild(normalize(n.args[0]));
      if (arg.is_const()) {
        double v = arg.const_value();
        double r = is_primitive(n.op) ? primitive_value(to_primitive(n.op), n.index, v)
                                      : eval_func_const(n.op, v);
        if (std::isfinite(r)) return Poly::constant(r);
      }
      if (n.op == Op::Exp && arg.is_zero()) return Poly::constant(1.0);
      return Poly::factor(is_primitive(n.op) ? make_prim(n.op, n.index, arg) : make_func(n.op, arg));
    }
  }
}

SmoothExpr rebuild(const Poly& p) {
  if (p.terms.empty()) return constant(0.0);
  std::vector<SmoothExpr> sum;
  for (const auto& [m, c] : p.terms) {
    std::vector<SmoothExpr> prod;
    if (c != 1.0 || m.empty()) prod.push_back(constant(c));
    for (const auto& [k, e] : m) {
      const SmoothExpr& f = p.factors.at(k);
      prod.push_back(e == 1.0 ? f : make_pow(f, e));
    }
    sum.push_back(prod.size() == 1 ? prod[0] : make_mul(std::move(prod)));
  }
  return sum.size() == 1 ? sum[0] : make_add(std::move(sum));
}

SmoothExpr raw_derivative(const SmoothExpr& e, int v) {
  const ExprNode& n = e.node();
  switch (n.op) {
    case Op::Const:
    case Op::Eps:
    case Op::EpsCut: return constant(0.0);
    case Op::Var: return constant(n.index == v ? 1.0 : 0.0);
    case Op::Add: {
      std::vector<SmoothExpr> t;
      for (const auto& a : n.args) {
        SmoothExpr d = raw_derivative(a, v);
        if (!d.is_zero()) t.push_back(d);
      }
      if (t.empty()) return constant(0.0);
      return t.size() == 1 ? t[0] : make_add(std::move(t));
    }
    case Op::Mul: {
      std::vector<SmoothExpr> t;
      for (std::size_t j = 0; j < n.args.size(); ++j) {
        SmoothExpr d = raw_derivative(n.args[j], v);
        if (d.is_zero()) continue;
        std::vector<SmoothExpr> f = n.args;
        f[j] = d;
        t.push_back(make_mul(std::move(f)));
      }
      if (t.empty()) return constant(0.0);
      return t.size() == 1 ? t[0] : make_add(std::move(t));
    }
    default: break;
  }
  SmoothExpr inner = raw_derivative(n.args[0], v);
  if (inner.is_zero()) return constant(0.0);
  const SmoothExpr& a = n.args[0];
  SmoothExpr outer;
  switch (n.op) {
    case Op::Pow: outer = make_mul({constant(n.value), make_pow(a, n.value - 1.0)}); break;
    case Op::Exp: outer = e; break;
    case Op::Log: outer = make_pow(a, -1.0); break;
    case Op::Sin: outer = make_func(Op::Cos, a); break;
    case Op::Cos: outer = make_mul({constant(-1.0), make_func(Op::Sin, a)}); break;
    case Op::Tanh:
      outer = make_add({constant(1.0), make_mul({constant(-1.0), make_pow(e, 2.0)})});
      break;
    default: outer = make_prim(n.op, n.index + 1, a); break;
  }
  return make_mul({outer, inner});
}

template <class Pred>
bool any_node(const SmoothExpr& e, Pred pred) {
  if (pred(e)) return true;
  for (const auto& a : e.args())
    if (any_node(a, pred)) return true;
  return false;
}

SmoothExpr replace_cuts(const SmoothExpr& e, double eps_value) {
  if (e.op() == Op::EpsCut) return constant(eps_value < e.node().value ? 1.0 : 0.0);
  if (e.args().empty()) return e;
  ExprNode n = e.node();
  for (auto& a : n.args) a = replace_cuts(a, eps_value);
  return make_node(std::move(n));
}

// ---- parser ----------------------------------------------------------------

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  SmoothExpr parse() {
    SmoothExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  SmoothExpr expr() {
    SmoothExpr acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  SmoothExpr term() {
    SmoothExpr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        SmoothExpr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  SmoothExpr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SmoothExpr power() {
    SmoothExpr base = primary();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    SmoothExpr ex = unary();
    if (!ex.is_const()) throw ParseError("exponent must be a constant", at);
    return pow(base, ex.const_value());
  }

  SmoothExpr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      SmoothExpr e = expr();
      expect(')');
      return e;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string id(s_.substr(start, pos_ - start));
    if (id == "eps") return eps();
    if (id == "pi") return constant(std::numbers::pi);
    if (id.size() > 1 && id[0] == 'x' &&
        std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      int k = std::stoi(id.substr(1));
      if (k < 1) throw ParseError("variables are numbered from x1", start);
      return var(k - 1);
    }
    if (id == "epscut") {
      expect('(');
      bool neg = accept('-');
      double v = number();
      expect(')');
      return eps_cut(neg ? -v : v);
    }
    expect('(');
    SmoothExpr arg = expr();
    expect(')');
    if (id == "exp") return simplify(make_func(Op::Exp, arg));
    if (id == "log") return simplify(make_func(Op::Log, arg));
    if (id == "sin") return simplify(make_func(Op::Sin, arg));
    if (id == "cos") return simplify(make_func(Op::Cos, arg));
    if (id == "tanh") return simplify(make_func(Op::Tanh, arg));
    if (id == "sqrt") return pow(arg, 0.5);
    for (Op p : {Op::Bump, Op::Plateau, Op::Step}) {
      std::string name = op_name(p);
      if (id == name) return simplify(make_prim(p, 0, arg));
      if (id.rfind(name + "_d", 0) == 0 && id.size() > name.size() + 2) {
        std::string digits = id.substr(name.size() + 2);
        if (std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          return simplify(make_prim(p, std::stoi(digits), arg));
      }
    }
    throw ParseError("unknown function '" + id + "'", start);
  }

  double number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
        pos_ = k;
      }
    }
    std::string token(s_.substr(start, pos_ - start));
    if (token.empty()) fail("expected a number");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      pos_ = start;
      fail("malformed number");
    }
    if (used != token.size()) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }
};

// ---- printer ---------------------------------------------------------------

int precedence(const SmoothExpr& e) {
  switch (e.op()) {
    case Op::Add: return 1;
    case Op::Mul: return 2;
    case Op::Pow: return 3;
    case Op::Const: return e.const_value() < 0 ? 1 : 4;
    default: return 4;
  }
}

std::string render(const SmoothExpr& e);

std::string wrap(const SmoothExpr& e, int min_prec) {
  std::string s = render(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string render(const SmoothExpr& e) {
  const ExprNode& n = e.node();
  switch (n.op) {
    case Op::Const: return num(n.value);
    case Op::Var: return "x" + std::to_string(n.index + 1);
    case Op::Eps: return "eps";
    case Op::EpsCut: return "epscut(" + num(n.value) + ")";
    case Op::Add: {
      std::string s;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        const SmoothExpr& a = n.args[i];
        std::string part = wrap(a, 2);
        if (i > 0) {
          bool negative_lead = (a.op() == Op::Mul && a.args()[0].is_const() && a.args()[0].const_value() < 0) ||
                               (a.is_const() && a.const_value() < 0);
          if (negative_lead) {
            SmoothExpr pos = simplify(make_mul({constant(-1.0), a}));
            s += " - " + wrap(pos, 2);
            continue;
          }
          s += " + ";
        }
        s += part;
      }
      return s;
    }
    case Op::Mul: {
      std::string s;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i > 0) s += "*";
        s += i == 0 ? (n.args[i].is_const() ? num(n.args[i].const_value()) : wrap(n.args[i], 3))
                    : wrap(n.args[i], 3);
      }
      return s;
    }
    case Op::Pow: {
      std::string ex = n.value < 0 ? "(" + num(n.value) + ")" : num(n.value);
      return wrap(n.args[0], 4) + "^" + ex;
    }
    default: {
      std::string name = op_name(n.op);
      if (is_primitive(n.op) && n.index > 0) name += "_d" + std::to_string(n.index);
      return name + "(" + render(n.args[0]) + ")";
    }
  }
}

}  // namespace

SmoothExpr::SmoothExpr() : SmoothExpr(constant(0.0)) {}

SmoothExpr constant(double c) {
  ExprNode n;
  n.op = Op::Const;
  n.value = c == 0.0 ? 0.0 : c;  // fold -0
  return make_node(std::move(n));
}

SmoothExpr var(int index) {
  ExprNode n;
  n.op = Op::Var;
  n.index = index;
  return make_node(std::move(n));
}

SmoothExpr eps() {
  ExprNode n;
  n.op = Op::Eps;
  return make_node(std::move(n));
}

SmoothExpr make_add(std::vector<SmoothExpr> terms) {
  ExprNode n;
  n.op = Op::Add;
  n.args = std::move(terms);
  return make_node(std::move(n));
}

SmoothExpr make_mul(std::vector<SmoothExpr> factors) {
  ExprNode n;
  n.op = Op::Mul;
  n.args = std::move(factors);
  return make_node(std::move(n));
}

SmoothExpr make_pow(SmoothExpr base, double exponent) {
  ExprNode n;
  n.op = Op::Pow;
  n.value = exponent;
  n.args = {std::move(base)};
  return make_node(std::move(n));
}

SmoothExpr make_func(Op op, SmoothExpr arg) {
  if (!is_func(op)) throw PreconditionError("not a function node");
  ExprNode n;
  n.op = op;
  n.args = {std::move(arg)};
  return make_node(std::move(n));
}

SmoothExpr make_prim(Op op, int order, SmoothExpr arg) {
  if (!is_primitive(op)) throw PreconditionError("not a primitive node");
  ExprNode n;
  n.op = op;
  n.index = order;
  n.args = {std::move(arg)};
  return make_node(std::move(n));
}

SmoothExpr eps_cut(double threshold) {
  ExprNode n;
  n.op = Op::EpsCut;
  n.value = threshold;
  return make_node(std::move(n));
}

SmoothExpr from_exact(const ExactNet& x) {
  std::vector<SmoothExpr> t;
  for (const auto& term : x.terms()) t.push_back(make_mul({constant(term.coeff), make_pow(eps(), term.expo)}));
  return simplify(make_add(std::move(t)));
}

SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b) { return simplify(make_add({a, b})); }
SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b) {
  return simplify(make_add({a, make_mul({constant(-1.0), b})}));
}
SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b) { return simplify(make_mul({a, b})); }
SmoothExpr operator/(const SmoothExpr& a, const SmoothExpr& b) {
  return simplify(make_mul({a, make_pow(b, -1.0)}));
}
SmoothExpr operator-(const SmoothExpr& a) { return simplify(make_mul({constant(-1.0), a})); }
SmoothExpr pow(const SmoothExpr& a, double p) { return simplify(make_pow(a, p)); }
SmoothExpr bump(const SmoothExpr& a) { return simplify(make_prim(Op::Bump, 0, a)); }
SmoothExpr plateau(const SmoothExpr& a) { return simplify(make_prim(Op::Plateau, 0, a)); }
SmoothExpr step(const SmoothExpr& a) { return simplify(make_prim(Op::Step, 0, a)); }

SmoothExpr simplify(const SmoothExpr& e) { return rebuild(normalize(e)); }

SmoothExpr derivative(const SmoothExpr& e, int var) { return simplify(raw_derivative(e, var)); }

SmoothExpr derivative(const SmoothExpr& e, const MultiIndex& alpha) {
  SmoothExpr r = e;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) r = derivative(r, static_cast<int>(i));
  return r;
}

SmoothExpr specialize_cuts(const SmoothExpr& e, double eps_value) {
  if (!has_eps_cut(e)) return e;
  return simplify(replace_cuts(e, eps_value));
}

bool has_eps_cut(const SmoothExpr& e) {
  return any_node(e, [](const SmoothExpr& n) { return n.op() == Op::EpsCut; });
}

bool depends_on_x(const SmoothExpr& e) {
  return any_node(e, [](const SmoothExpr& n) { return n.op() == Op::Var; });
}

int arity(const SmoothExpr& e) {
  int m = 0;
  any_node(e, [&m](const SmoothExpr& n) {
    if (n.op() == Op::Var) m = std::max(m, n.node().index + 1);
    return false;
  });
  return m;
}

bool is_polynomial(const SmoothExpr& e) {
  switch (e.op()) {
    case Op::Const:
    case Op::Var:
    case Op::Eps: return true;
    case Op::Add:
    case Op::Mul:
      return std::all_of(e.args().begin(), e.args().end(), [](const SmoothExpr& a) { return is_polynomial(a); });
    case Op::Pow: {
      const SmoothExpr& b = e.args()[0];
      if (b.op() == Op::Eps) return true;
      double p = e.node().value;
      return p >= 0 && p == std::floor(p) && is_polynomial(b);
    }
    default: return false;
  }
}

SmoothExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

std::string to_string(const SmoothExpr& e) { return render(e); }

}  // namespace cgsf
