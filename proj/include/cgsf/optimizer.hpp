#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cgsf/evaluator.hpp"
#include "cgsf/expr.hpp"
#include "cgsf/sets.hpp"

namespace cgsf {

struct OptimizerConfig {
  int grid_points = 64;  // uniform samples per dimension
  int starts = 5;        // local refinements in several dimensions
  int iterations = 100;  // per refinement
  double tolerance = 1e-3;
  std::uint64_t seed = 7;
};

struct Extrema {
  std::vector<double> argmin;
  std::vector<double> argmax;
  double min = 0.0;
  double max = 0.0;
  bool found = false;      // false when every box is empty at this epsilon
  bool converged = true;   // false when a refinement ran out of iterations
};

// Global optimisation of one expression over a union of boxes at fixed
// epsilon. Samples a uniform grid plus dense clusters around the places where
// arguments of nonlinear subexpressions vanish or bottom out, then refines the
// best samples locally.
class BoxOptimizer {
 public:
  explicit BoxOptimizer(const SmoothExpr& f, OptimizerConfig cfg = {});

  Extrema extrema(const std::vector<BoxAt>& boxes, double eps) const;

  // sup over the boxes of |d^k f/dx^k| for k = 0..order; one dimension only.
  std::vector<double> abs_sup_table(const std::vector<BoxAt>& boxes, double eps, int order,
                                    bool* converged = nullptr) const;

  const SmoothExpr& expr() const { return f_; }

 private:
  struct Hint {
    CompiledExpr arg;
    int var;
    bool shaped;  // argument of bump, plateau or step
  };

  SmoothExpr f_;
  CompiledExpr compiled_;
  OptimizerConfig cfg_;
  int dim_;
  std::vector<Hint> hints_;
  // Nets with eps cuts are optimized per eps after the cuts are replaced by
  // their 0/1 values, so that switched-on terms cancel symbolically.
  bool has_cuts_ = false;
  mutable std::map<std::string, std::shared_ptr<const BoxOptimizer>> specialized_;

  const BoxOptimizer& at_eps(double eps) const;

  std::vector<double> sample_points(double lo, double hi, const std::vector<double>& at, int var,
                                    double eps, bool dense) const;
  Extrema extrema_1d(const std::vector<BoxAt>& boxes, double eps) const;
  Extrema extrema_nd(const std::vector<BoxAt>& boxes, double eps) const;
};

}  // namespace cgsf
