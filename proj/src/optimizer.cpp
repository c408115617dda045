#include "cgsf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <map>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_nonlinear_wrapper(const SmoothExpr& e) {
  switch (e.op()) {
    case Op::Exp:
    case Op::Log:
    case Op::Sin:
    case Op::Cos:
    case Op::Tanh:
    case Op::Bump:
    case Op::Plateau:
    case Op::Step: return true;
    case Op::Pow: return e.node().value < 0 || e.node().value != std::floor(e.node().value);
    default: return false;
  }
}

bool has_shape_landmarks(const SmoothExpr& e) {
  return e.op() == Op::Bump || e.op() == Op::Plateau || e.op() == Op::Step;
}

// Arguments of nonlinear wrappers, each with whether some wrapper of it is a
// cutoff primitive.
void collect_arguments(const SmoothExpr& e, std::map<std::string, std::size_t>& seen,
                       std::vector<std::pair<SmoothExpr, bool>>& out) {
  if (is_nonlinear_wrapper(e) && depends_on_x(e.args()[0])) {
    auto [it, fresh] = seen.emplace(e.args()[0].key(), out.size());
    if (fresh) out.emplace_back(e.args()[0], false);
    out[it->second].second = out[it->second].second || has_shape_landmarks(e);
  }
  for (const auto& a : e.args()) collect_arguments(a, seen, out);
}

// Zero of the (k+1)-th derivative in [a, b] by Newton steps safeguarded with
// bisection. ga and gb are the (k+1)-th derivatives at the ends. Returns NaN
// when they do not bracket a sign change.
struct Refined {
  double x = kNaN;
  double value = kNaN;  // k-th derivative at x
  bool converged = true;
};

Refined refine_critical(const CompiledExpr& f, int k, double a, double b, double ga, double gb, double eps,
                        int iterations, std::vector<double>& point, int var) {
  Refined r;
  if (!(ga * gb <= 0.0) || a == b) return r;
  double lo = ga < 0 ? a : b;  // derivative negative here
  double hi = ga < 0 ? b : a;
  if (ga == 0.0) lo = hi = a;
  if (gb == 0.0) lo = hi = b;
  double x = 0.5 * (a + b);
  if (lo == hi) x = lo;
  const double tol = 1e-14 * std::fabs(b - a) + 4 * std::numeric_limits<double>::denorm_min();
  int it = 0;
  Jet j;
  for (; it < iterations; ++it) {
    point[var] = x;
    j = f.eval_jet(point, eps, var, k + 3);
    if (lo == hi) break;
    double g = j.derivative(k + 1);
    double dg = j.derivative(k + 2);
    if (g == 0.0) break;
    (g < 0 ? lo : hi) = x;
    double left = std::min(lo, hi), right = std::max(lo, hi);
    double next = dg != 0.0 ? x - g / dg : kNaN;
    if (!(next > left && next < right)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= tol || right - left <= tol) {
      x = next;
      point[var] = x;
      j = f.eval_jet(point, eps, var, k + 1);
      break;
    }
    x = next;
  }
  r.converged = it < iterations;
  r.x = x;
  r.value = j.derivative(k);
  return r;
}

// Indices of local maxima of s, largest first, at most `limit` of them.
std::vector<std::size_t> top_local_maxima(const std::vector<double>& s, std::size_t limit) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool left = i == 0 || s[i] >= s[i - 1];
    bool right = i + 1 == s.size() || s[i] >= s[i + 1];
    if (left && right) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
  if (idx.size() > limit) idx.resize(limit);
  return idx;
}

}  // namespace

BoxOptimizer::BoxOptimizer(const SmoothExpr& f, OptimizerConfig cfg)
    : f_(f), compiled_(f), cfg_(cfg), dim_(arity(f)), has_cuts_(has_eps_cut(f)) {
  if (cfg_.grid_points < 2) throw PreconditionError("optimizer needs at least two grid points per dimension");
  if (has_cuts_) return;
  std::map<std::string, std::size_t> seen;
  std::vector<std::pair<SmoothExpr, bool>> args;
  collect_arguments(f, seen, args);
  for (const auto& [a, shaped] : args) {
    if (!is_polynomial(a)) continue;
    for (int v = 0; v < arity(a); ++v) {
      SmoothExpr d = derivative(a, v);
      if (d.is_zero()) continue;
      if (!derivative(derivative(d, v), v).is_zero()) continue;
      hints_.push_back({CompiledExpr(a), v, shaped});
    }
  }
}

// Uniform samples of [lo, hi] plus, for every hinted argument that is at
// most quadratic in `var`, a cluster around its vertex or root on the
// length scale over which the argument changes by one unit. The argument is
// also sampled uniformly over [-2, 2] and geometrically near the values
// where bump, plateau and step change shape, since derivatives peak there.
std::vector<double> BoxOptimizer::sample_points(double lo, double hi, const std::vector<double>& at, int var,
                                                double eps, bool dense) const {
  std::vector<double> pts;
  const int g = cfg_.grid_points;
  for (int i = 0; i < g; ++i) pts.push_back(lo + (hi - lo) * i / (g - 1));
  pts.back() = hi;
  const double width = hi - lo;
  const double x0 = 0.5 * (lo + hi);
  std::vector<double> point = at;
  point[var] = x0;
  for (const auto& h : hints_) {
    if (h.var != var) continue;
    Jet j = h.arg.eval_jet(point, eps, var, 3);
    double c0 = j.c[0], c1 = j.c[1], c2 = j.c[2];
    auto preimages = [&](double value) {
      if (c2 != 0.0) {
        double disc = c1 * c1 - 4 * c2 * (c0 - value);
        if (disc < 0) return;
        double r = std::sqrt(disc);
        pts.push_back(x0 + (-c1 + r) / (2 * c2));
        pts.push_back(x0 + (-c1 - r) / (2 * c2));
      } else if (c1 != 0.0) {
        pts.push_back(x0 + (value - c0) / c1);
      }
    };
    if (h.shaped) {
      const int uniform = dense ? 32 : 8;
      for (int i = -uniform; i <= uniform; ++i) preimages(2.0 * i / uniform);
      const int levels = dense ? 16 : 6;
      for (double mark : {-1.0, -0.5, 0.0, 0.5, 1.0})
        for (int e = 2; e <= levels; ++e) {
          double d = std::exp2(-0.5 * e);
          preimages(mark - d);
          preimages(mark + d);
        }
    }
    double center, scale;
    if (c2 != 0.0) {
      center = x0 - c1 / (2 * c2);
      double bottom = c0 - c1 * c1 / (4 * c2);
      scale = 1.0 / std::sqrt(std::fabs(c2));
      if (bottom != 0.0) scale = std::min(scale, std::sqrt(std::fabs(bottom / c2)));
    } else if (c1 != 0.0) {
      center = x0 - c0 / c1;
      scale = 1.0 / std::fabs(c1);
    } else {
      continue;
    }
    if (!std::isfinite(center) || !std::isfinite(scale) || scale <= 0) continue;
    if (16 * scale >= width) continue;
    const int half = dense ? 128 : 16;
    for (int i = -half; i <= half; ++i) pts.push_back(center + 1.25 * scale * i / half);
    for (int e = 1; e <= 60; ++e) {
      double d = scale * std::ldexp(1.0, e);
      if (d > width) break;
      pts.push_back(center - d);
      pts.push_back(center + d);
    }
  }
  std::erase_if(pts, [&](double p) { return !(p >= lo && p <= hi); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

const BoxOptimizer& BoxOptimizer::at_eps(double eps) const {
  SmoothExpr g = specialize_cuts(f_, eps);
  auto& slot = specialized_[to_string(g)];
  if (!slot) slot = std::make_shared<const BoxOptimizer>(g, cfg_);
  return *slot;
}

Extrema BoxOptimizer::extrema(const std::vector<BoxAt>& boxes, double eps) const {
  if (has_cuts_) return at_eps(eps).extrema(boxes, eps);
  std::size_t n = 0;
  for (const auto& b : boxes) n = std::max(n, b.lo.size());
  if (static_cast<int>(n) < dim_) throw PreconditionError("expression uses more variables than the boxes have");
  return n <= 1 ? extrema_1d(boxes, eps) : extrema_nd(boxes, eps);
}

Extrema BoxOptimizer::extrema_1d(const std::vector<BoxAt>& boxes, double eps) const {
  Extrema out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  std::vector<double> point(1, 0.0);
  auto consider = [&](double x, double v) {
    if (v > out.max || (v == out.max && x < out.argmax[0])) {
      out.max = v;
      out.argmax = {x};
    }
    if (v < out.min || (v == out.min && x < out.argmin[0])) {
      out.min = v;
      out.argmin = {x};
    }
  };
  const std::size_t limit = static_cast<std::size_t>(std::max(3, cfg_.starts));
  for (const auto& box : boxes) {
    if (box.empty) continue;
    out.found = true;
    std::vector<double> xs = sample_points(box.lo[0], box.hi[0], point, 0, eps, true);
    std::vector<double> f(xs.size()), df(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      point[0] = xs[i];
      Jet j = compiled_.eval_jet(point, eps, 0, 2);
      f[i] = j.c[0];
      df[i] = j.c[1];
      consider(xs[i], f[i]);
    }
    for (int sign : {1, -1}) {
      std::vector<double> s(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) s[i] = sign * f[i];
      for (std::size_t i : top_local_maxima(s, limit)) {
        if (i == 0 || i + 1 == xs.size()) continue;
        Refined r = refine_critical(compiled_, 0, xs[i - 1], xs[i + 1], df[i - 1], df[i + 1], eps,
                                    cfg_.iterations, point, 0);
        if (std::isnan(r.x)) continue;
        out.converged = out.converged && r.converged;
        consider(r.x, r.value);
      }
    }
  }
  if (!out.found) out.min = out.max = 0.0;
  return out;
}

std::vector<double> BoxOptimizer::abs_sup_table(const std::vector<BoxAt>& boxes, double eps, int order,
                                                bool* converged) const {
  if (has_cuts_) return at_eps(eps).abs_sup_table(boxes, eps, order, converged);
  if (order < 0 || order + 3 > Jet::kCapacity) throw PreconditionError("derivative order out of jet range");
  for (const auto& b : boxes)
    if (b.lo.size() != 1) throw PreconditionError("derivative tables are one-dimensional");
  std::vector<double> sup(order + 1, 0.0);
  std::vector<double> point(1, 0.0);
  bool ok = true;
  for (const auto& box : boxes) {
    if (box.empty) continue;
    std::vector<double> xs = sample_points(box.lo[0], box.hi[0], point, 0, eps, true);
    std::vector<std::vector<double>> d(order + 2, std::vector<double>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      point[0] = xs[i];
      Jet j = compiled_.eval_jet(point, eps, 0, order + 2);
      for (int k = 0; k <= order + 1; ++k) d[k][i] = j.derivative(k);
    }
    for (int k = 0; k <= order; ++k) {
      std::vector<double> s(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) s[i] = std::fabs(d[k][i]);
      for (double v : s) sup[k] = std::max(sup[k], v);
      for (std::size_t i : top_local_maxima(s, 8)) {
        if (i == 0 || i + 1 == xs.size()) continue;
        Refined r = refine_critical(compiled_, k, xs[i - 1], xs[i + 1], d[k + 1][i - 1], d[k + 1][i + 1], eps,
                                    cfg_.iterations, point, 0);
        if (std::isnan(r.x)) continue;
        ok = ok && r.converged;
        sup[k] = std::max(sup[k], std::fabs(r.value));
      }
    }
  }
  if (converged) *converged = ok;
  return sup;
}

Extrema BoxOptimizer::extrema_nd(const std::vector<BoxAt>& boxes, double eps) const {
  Extrema out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  auto lex_less = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  };
  auto consider = [&](const std::vector<double>& x, double v) {
    if (v > out.max || (v == out.max && lex_less(x, out.argmax))) {
      out.max = v;
      out.argmax = x;
    }
    if (v < out.min || (v == out.min && lex_less(x, out.argmin))) {
      out.min = v;
      out.argmin = x;
    }
  };
  std::mt19937_64 rng(cfg_.seed);
  for (const auto& box : boxes) {
    if (box.empty) continue;
    out.found = true;
    const std::size_t n = box.lo.size();
    std::vector<double> center(n);
    for (std::size_t d = 0; d < n; ++d) center[d] = 0.5 * (box.lo[d] + box.hi[d]);
    const int per_dim = std::clamp(static_cast<int>(std::floor(std::pow(4096.0, 1.0 / n))), 3, cfg_.grid_points);
    OptimizerConfig coarse = cfg_;
    coarse.grid_points = per_dim;
    BoxOptimizer sampler(f_, coarse);
    std::vector<std::vector<double>> axes(n);
    std::size_t total = 1;
    for (std::size_t d = 0; d < n; ++d) {
      axes[d] = sampler.sample_points(box.lo[d], box.hi[d], center, static_cast<int>(d), eps, false);
      total *= axes[d].size();
    }
    if (total > 200000) {
      total = 1;
      for (std::size_t d = 0; d < n; ++d) {
        axes[d].clear();
        for (int i = 0; i < per_dim; ++i) axes[d].push_back(box.lo[d] + (box.hi[d] - box.lo[d]) * i / (per_dim - 1));
        total *= axes[d].size();
      }
    }
    // Best grid points for each direction, then random starts.
    std::vector<std::pair<double, std::vector<double>>> best_hi, best_lo;
    const std::size_t keep = static_cast<std::size_t>(std::max(1, cfg_.starts));
    auto push = [&](auto& list, double v, const std::vector<double>& x, bool larger) {
      list.emplace_back(v, x);
      std::stable_sort(list.begin(), list.end(),
                       [&](const auto& a, const auto& b) { return larger ? a.first > b.first : a.first < b.first; });
      if (list.size() > keep) list.pop_back();
    };
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    for (std::size_t t = 0; t < total; ++t) {
      for (std::size_t d = 0; d < n; ++d) x[d] = axes[d][idx[d]];
      double v = compiled_.eval(x, eps);
      consider(x, v);
      if (best_hi.size() < keep || v > best_hi.back().first) push(best_hi, v, x, true);
      if (best_lo.size() < keep || v < best_lo.back().first) push(best_lo, v, x, false);
      for (std::size_t d = n; d-- > 0;) {
        if (++idx[d] < axes[d].size()) break;
        idx[d] = 0;
      }
    }
    for (int s = 0; s < cfg_.starts; ++s) {
      for (std::size_t d = 0; d < n; ++d)
        x[d] = std::uniform_real_distribution<double>(box.lo[d], box.hi[d])(rng);
      double v = compiled_.eval(x, eps);
      consider(x, v);
      best_hi.emplace_back(v, x);
      best_lo.emplace_back(v, x);
    }
    for (int sign : {1, -1}) {
      for (const auto& [v0, start] : sign > 0 ? best_hi : best_lo) {
        std::vector<double> p = start;
        double v = sign * v0;
        std::vector<double> step(n);
        for (std::size_t d = 0; d < n; ++d) step[d] = (box.hi[d] - box.lo[d]) / (per_dim - 1);
        int it = 0;
        for (; it < cfg_.iterations; ++it) {
          bool moved = false;
          for (std::size_t d = 0; d < n && !moved; ++d) {
            for (double dir : {-1.0, 1.0}) {
              std::vector<double> q = p;
              q[d] = std::clamp(p[d] + dir * step[d], box.lo[d], box.hi[d]);
              if (q[d] == p[d]) continue;
              double w = sign * compiled_.eval(q, eps);
              if (w > v) {
                p = std::move(q);
                v = w;
                moved = true;
                break;
              }
            }
          }
          if (!moved) {
            bool tiny = true;
            for (std::size_t d = 0; d < n; ++d) {
              step[d] *= 0.5;
              tiny = tiny && step[d] <= 1e-13 * (box.hi[d] - box.lo[d]);
            }
            if (tiny) break;
          }
        }
        if (it == cfg_.iterations) out.converged = false;
        consider(p, sign * v);
      }
    }
  }
  if (!out.found) out.min = out.max = 0.0;
  return out;
}

}  // namespace cgsf
