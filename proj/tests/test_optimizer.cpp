#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cgsf/expr.hpp"
#include "cgsf/optimizer.hpp"
#include "cgsf/verify.hpp"

using namespace cgsf;

namespace {

// Brute-force sup of |f^(k)| over [lo, hi] for k <= order: a uniform scan,
// then two finer scans around the best sample for each k.
std::vector<double> scan_sup(const SmoothExpr& e, double lo, double hi, double eps, int order, int samples) {
  CompiledExpr c(e);
  std::vector<double> sup(order + 1, 0.0), best(order + 1, lo), p(1);
  double h = (hi - lo) / samples;
  auto sweep = [&](double a, double b, int n) {
    for (int i = 0; i <= n; ++i) {
      p[0] = std::clamp(a + (b - a) * i / n, lo, hi);
      Jet j = c.eval_jet(p, eps, 0, order + 1);
      for (int k = 0; k <= order; ++k)
        if (std::fabs(j.derivative(k)) > sup[k]) {
          sup[k] = std::fabs(j.derivative(k));
          best[k] = p[0];
        }
    }
  };
  sweep(lo, hi, samples);
  for (int pass = 0; pass < 2; ++pass, h /= 1000) {
    std::vector<double> centre = best;
    for (double x : centre) sweep(x - h, x + h, 2000);
  }
  return sup;
}

BoxAt box(double lo, double hi) {
  BoxAt b;
  b.lo = {lo};
  b.hi = {hi};
  return b;
}

}  // namespace

TEST(Optimizer, NarrowDerivativePeakNearBumpEdge) {
  // |g''| peaks at x ~ 0.447, between the uniform samples.
  SmoothExpr g = parse_expr("1.25*bump(2*x1)*cos(1*x1) + -0.25*bump(1*x1)");
  auto want = scan_sup(g, -1, 1, 1.0 / 16, 2, 200000);
  auto got = BoxOptimizer(g).abs_sup_table({box(-1, 1)}, 1.0 / 16, 2);
  for (int k = 0; k <= 2; ++k) EXPECT_NEAR(got[k], want[k], 1e-6 * want[k]) << "k = " << k;
}

TEST(Optimizer, SupTablesMatchDenseScan) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    SmoothExpr e = parse_expr(random_bump_combination(rng, false));
    BoxOptimizer opt(e);
    for (double eps : {1.0 / 16, 1.0 / 1024}) {
      auto want = scan_sup(e, -1, 1, eps, 3, 100000);
      auto got = opt.abs_sup_table({box(-1, 1)}, eps, 3);
      for (int k = 0; k <= 3; ++k) {
        EXPECT_GE(got[k], want[k] * (1 - 1e-9)) << to_string(e) << " k = " << k;
        EXPECT_LE(got[k], want[k] * (1 + 1e-9)) << to_string(e) << " k = " << k;
      }
    }
  }
}

TEST(Optimizer, ExtremaOfParabola) {
  Extrema x = BoxOptimizer(parse_expr("x1*(1-x1)")).extrema({box(0, 1)}, 0.5);
  EXPECT_NEAR(x.max, 0.25, 1e-12);
  EXPECT_NEAR(x.argmax[0], 0.5, 1e-6);
  EXPECT_EQ(x.min, 0.0);
}
