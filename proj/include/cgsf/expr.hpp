#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cgsf/exact_net.hpp"

namespace cgsf {

enum class Op {
  Const,
  Var,
  Eps,
  Add,
  Mul,
  Pow,
  Exp,
  Log,
  Sin,
  Cos,
  Tanh,
  Bump,
  Plateau,
  Step,
  // 1 when eps < threshold, else 0; constant in x.
  EpsCut,
};

class SmoothExpr;

struct ExprNode {
  Op op = Op::Const;
  double value = 0.0;  // constant, power exponent or cut threshold
  int index = 0;       // variable index or derivative order of a primitive
  std::vector<SmoothExpr> args;
  std::string key;     // canonical structural key
};

// Immutable expression u(x, eps) in the variables x_0..x_{n-1}.
class SmoothExpr {
 public:
  SmoothExpr();  // the constant 0
  explicit SmoothExpr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  const ExprNode& node() const { return *node_; }
  Op op() const { return node_->op; }
  const std::string& key() const { return node_->key; }
  const std::vector<SmoothExpr>& args() const { return node_->args; }

  bool is_const() const { return op() == Op::Const; }
  bool is_zero() const { return is_const() && node_->value == 0.0; }
  double const_value() const { return node_->value; }

 private:
  std::shared_ptr<const ExprNode> node_;
};

// Raw constructors; they do not simplify.
SmoothExpr constant(double c);
SmoothExpr var(int index);
SmoothExpr eps();
SmoothExpr make_add(std::vector<SmoothExpr> terms);
SmoothExpr make_mul(std::vector<SmoothExpr> factors);
SmoothExpr make_pow(SmoothExpr base, double exponent);
SmoothExpr make_func(Op op, SmoothExpr arg);
// Derivative of order k of a primitive (Bump, Plateau or Step) applied to arg.
SmoothExpr make_prim(Op op, int order, SmoothExpr arg);
SmoothExpr eps_cut(double threshold);
SmoothExpr from_exact(const ExactNet& x);

// Simplifying arithmetic.
SmoothExpr operator+(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator-(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator*(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator/(const SmoothExpr& a, const SmoothExpr& b);
SmoothExpr operator-(const SmoothExpr& a);
SmoothExpr pow(const SmoothExpr& a, double p);
SmoothExpr bump(const SmoothExpr& a);
SmoothExpr plateau(const SmoothExpr& a);
SmoothExpr step(const SmoothExpr& a);

// Canonical form: an expanded sum of monomials with merged powers and
// collected coefficients, so structurally equal differences cancel to 0.
SmoothExpr simplify(const SmoothExpr& e);

using MultiIndex = std::vector<int>;

SmoothExpr derivative(const SmoothExpr& e, int var);
SmoothExpr derivative(const SmoothExpr& e, const MultiIndex& alpha);

// Replaces every EpsCut by its value at eps and simplifies.
SmoothExpr specialize_cuts(const SmoothExpr& e, double eps);
bool has_eps_cut(const SmoothExpr& e);
bool depends_on_x(const SmoothExpr& e);
// Number of variables: one more than the largest index used.
int arity(const SmoothExpr& e);
// Polynomial in x and eps with natural powers of x.
bool is_polynomial(const SmoothExpr& e);

// Grammar: sums, products, quotients, powers (^), unary minus, numbers, eps,
// pi, variables x1, x2, ... (1-based), and the functions exp log sin cos tanh
// sqrt bump plateau step.
SmoothExpr parse_expr(std::string_view text);
// Renders with 1-based variable names so that parse_expr(to_string(e)) == e.
std::string to_string(const SmoothExpr& e);

}  // namespace cgsf
