#pragma once

#include <span>
#include <vector>

#include "cgsf/expr.hpp"
#include "cgsf/jet.hpp"

namespace cgsf {

// Flattened expression with shared subexpressions evaluated once.
class CompiledExpr {
 public:
  explicit CompiledExpr(const SmoothExpr& e);

  double eval(std::span<const double> x, double eps) const;
  // Taylor series in the direction of variable `var` at x, with `len` terms.
  Jet eval_jet(std::span<const double> x, double eps, int var, int len) const;

 private:
  struct Instr {
    Op op;
    double value;
    int index;
    std::vector<int> args;
  };
  std::vector<Instr> tape_;

  int emit(const SmoothExpr& e, std::vector<std::pair<std::string, int>>& seen);
};

}  // namespace cgsf
