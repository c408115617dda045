#include "cgsf/number.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const EpsilonGrid& common_grid(const GeneralizedNumber& a, const GeneralizedNumber& b) {
  const EpsilonGrid* ga = a.grid();
  const EpsilonGrid* gb = b.grid();
  if (ga && gb && !(*ga == *gb)) throw PreconditionError("sampled operands live on different grids");
  return ga ? *ga : *gb;
}

template <class Op>
GeneralizedNumber pointwise(const GeneralizedNumber& a, const GeneralizedNumber& b, Op op) {
  const EpsilonGrid& grid = common_grid(a, b);
  SampledNet sa = a.to_sampled(grid);
  SampledNet sb = b.to_sampled(grid);
  std::vector<LogReal> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = op(sa.sample(i), sb.sample(i));
  std::shared_ptr<const Generator> gen;
  if (sa.generator() && sb.generator()) {
    auto ga = sa.generator();
    auto gb = sb.generator();
    gen = std::make_shared<const Generator>(
        [ga, gb, op](double log_eps) { return op((*ga)(log_eps), (*gb)(log_eps)); });
  }
  return SampledNet(grid, std::move(out), std::move(gen));
}

template <class Op>
GeneralizedNumber pointwise_unary(const SampledNet& s, Op op) {
  std::vector<LogReal> out(s.samples().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(s.sample(i));
  std::shared_ptr<const Generator> gen;
  if (s.generator()) {
    auto g = s.generator();
    gen = std::make_shared<const Generator>([g, op](double log_eps) { return op((*g)(log_eps)); });
  }
  return SampledNet(s.grid(), std::move(out), std::move(gen));
}

struct Fit {
  double slope = 0.0;
  double residual = 0.0;
  std::size_t count = 0;
};

Fit tail_fit(const SampledNet& s) {
  const EpsilonGrid& g = s.grid();
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
    if (!s.sample(i).is_zero()) pts.emplace_back(g.log_eps(i), s.sample(i).log_magnitude());
  }
  Fit f;
  f.count = pts.size();
  if (pts.size() < 2) return f;
  double mt = 0, my = 0;
  for (auto [t, y] : pts) {
    mt += t;
    my += y;
  }
  mt /= pts.size();
  my /= pts.size();
  double stt = 0, sty = 0;
  for (auto [t, y] : pts) {
    stt += (t - mt) * (t - mt);
    sty += (t - mt) * (y - my);
  }
  f.slope = sty / stt;
  double ss = 0;
  for (auto [t, y] : pts) {
    double r = y - (my + f.slope * (t - mt));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / pts.size());
  return f;
}

}  // namespace

SampledNet::SampledNet(EpsilonGrid grid, std::vector<LogReal> samples,
                       std::shared_ptr<const Generator> generator)
    : grid_(grid), samples_(std::move(samples)), generator_(std::move(generator)) {
  if (samples_.size() != grid_.size()) throw PreconditionError("sample count does not match grid");
}

SampledNet SampledNet::from_generator(const EpsilonGrid& grid, Generator gen) {
  auto shared = std::make_shared<const Generator>(std::move(gen));
  std::vector<LogReal> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = (*shared)(grid.log_eps(i));
  return SampledNet(grid, std::move(samples), std::move(shared));
}

SampledNet SampledNet::from_exact(const EpsilonGrid& grid, const ExactNet& x) {
  return from_generator(grid, [x](double log_eps) { return x.eval_log(log_eps); });
}

SampledNet GeneralizedNumber::to_sampled(const EpsilonGrid& grid) const {
  if (is_exact()) return SampledNet::from_exact(grid, exact());
  const SampledNet& s = sampled();
  if (s.grid() == grid) return s;
  if (!s.generator()) throw PreconditionError("sampled net without generator cannot change grid");
  return SampledNet::from_generator(grid, *s.generator());
}

LogReal GeneralizedNumber::log_value_at(const EpsilonGrid& grid, std::size_t i) const {
  if (is_exact()) return exact().eval_log(grid.log_eps(i));
  const SampledNet& s = sampled();
  if (s.grid() == grid) return s.sample(i);
  return to_sampled(grid).sample(i);
}

GeneralizedNumber GeneralizedNumber::operator-() const {
  if (is_exact()) return -exact();
  return pointwise_unary(sampled(), [](const LogReal& v) { return -v; });
}

GeneralizedNumber operator+(const GeneralizedNumber& a, const GeneralizedNumber& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() + b.exact();
  return pointwise(a, b, [](const LogReal& x, const LogReal& y) { return x + y; });
}

GeneralizedNumber operator-(const GeneralizedNumber& a, const GeneralizedNumber& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() - b.exact();
  return pointwise(a, b, [](const LogReal& x, const LogReal& y) { return x - y; });
}

GeneralizedNumber operator*(const GeneralizedNumber& a, const GeneralizedNumber& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() * b.exact();
  return pointwise(a, b, [](const LogReal& x, const LogReal& y) { return x * y; });
}

GeneralizedNumber divide(const GeneralizedNumber& a, const GeneralizedNumber& b,
                         const EpsilonGrid& grid) {
  if (b.is_exact()) {
    if (b.exact().is_zero()) throw PreconditionError("division by the zero class");
    if (b.exact().is_monomial() && a.is_exact()) {
      const auto t = b.exact().terms().front();
      return a.exact() * ExactNet::monomial(1.0 / t.coeff, -t.expo);
    }
  }
  const EpsilonGrid& g = a.grid() ? *a.grid() : (b.grid() ? *b.grid() : grid);
  GeneralizedNumber sa = a.to_sampled(g);
  GeneralizedNumber sb = b.to_sampled(g);
  for (const auto& v : sb.sampled().samples())
    if (v.is_zero()) throw PreconditionError("divisor has an exact zero sample");
  return pointwise(sa, sb, [](const LogReal& x, const LogReal& y) { return x / y; });
}

GeneralizedNumber abs(const GeneralizedNumber& x) {
  if (x.is_exact()) return x.exact().leading_coeff() < 0 ? -x.exact() : x.exact();
  return pointwise_unary(x.sampled(), [](const LogReal& v) { return v.abs(); });
}

GeneralizedNumber sqrt(const GeneralizedNumber& x, const EpsilonGrid& grid) {
  if (x.is_exact()) {
    const ExactNet& e = x.exact();
    if (e.is_zero()) return e;
    if (e.is_monomial() && e.leading_coeff() > 0)
      return ExactNet::monomial(std::sqrt(e.leading_coeff()), e.leading_exponent() / 2.0);
  }
  SampledNet s = x.to_sampled(x.grid() ? *x.grid() : grid);
  for (const auto& v : s.samples())
    if (v.sign() < 0) throw EvalDomainError("square root of a net with negative samples");
  return pointwise_unary(s, [](const LogReal& v) { return v.sqrt(); });
}

GeneralizedNumber gmax(const GeneralizedNumber& a, const GeneralizedNumber& b,
                       const EpsilonGrid& grid) {
  if (a.is_exact() && b.is_exact()) return (a.exact() - b.exact()).leading_coeff() >= 0 ? a : b;
  GeneralizedNumber sa = a.grid() || b.grid() ? a : GeneralizedNumber(a.to_sampled(grid));
  return pointwise(sa, b, [](const LogReal& x, const LogReal& y) { return compare(x, y) >= 0 ? x : y; });
}

GeneralizedNumber gmin(const GeneralizedNumber& a, const GeneralizedNumber& b,
                       const EpsilonGrid& grid) {
  if (a.is_exact() && b.is_exact()) return (a.exact() - b.exact()).leading_coeff() <= 0 ? a : b;
  GeneralizedNumber sa = a.grid() || b.grid() ? a : GeneralizedNumber(a.to_sampled(grid));
  return pointwise(sa, b, [](const LogReal& x, const LogReal& y) { return compare(x, y) <= 0 ? x : y; });
}

GeneralizedNumber from_samples(const EpsilonGrid& grid, const std::vector<double>& values) {
  std::vector<LogReal> s(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s[i] = LogReal::from_double(values[i]);
  return SampledNet(grid, std::move(s));
}

Valuation valuation(const GeneralizedNumber& x, const DecisionConfig& cfg) {
  Valuation v;
  if (x.is_exact()) {
    v.value = x.exact().leading_exponent();
    return v;
  }
  Fit f = tail_fit(x.sampled());
  if (f.count == 0) {
    v.value = kInf;
    return v;
  }
  if (f.count < 2) {
    v.value = kInf;
    v.reliable = false;
    return v;
  }
  v.residual = f.residual;
  if (f.slope >= cfg.v_cut) {
    v.value = kInf;
    return v;
  }
  v.reliable = f.residual <= cfg.residual_threshold;
  if (f.slope <= -cfg.v_cut) {
    v.value = -cfg.v_cut;
    v.reliable = false;
    return v;
  }
  v.value = f.slope;
  return v;
}

double e_norm(const GeneralizedNumber& x, const DecisionConfig& cfg) {
  return std::exp(-valuation(x, cfg).value);
}

double sharp_distance(const GeneralizedNumber& x, const GeneralizedNumber& y,
                      const DecisionConfig& cfg) {
  return e_norm(x - y, cfg);
}

Positivity strictly_positive(const GeneralizedNumber& x, const DecisionConfig& cfg) {
  Positivity p;
  if (x.is_exact()) {
    const ExactNet& e = x.exact();
    if (e.is_zero() || e.leading_coeff() < 0) {
      p.decision = Tri::False;
    } else {
      p.decision = Tri::True;
      p.witness = static_cast<int>(std::floor(e.leading_exponent())) + 1;
    }
    return p;
  }
  const SampledNet& s = x.sampled();
  const EpsilonGrid& g = s.grid();
  if (valuation(x, cfg).negligible()) {
    p.decision = Tri::False;
    return p;
  }
  for (std::size_t i = g.late_tail_begin(); i < g.size(); ++i) {
    if (s.sample(i).sign() <= 0) {
      p.decision = Tri::False;
      return p;
    }
  }
  for (int m = -cfg.m_max; m <= cfg.m_max; ++m) {
    bool ok = true;
    for (std::size_t i = g.tail_begin(); i < g.size() && ok; ++i) {
      const LogReal& v = s.sample(i);
      ok = v.sign() > 0 && v.log_magnitude() > m * g.log_eps(i);
    }
    if (ok) {
      p.decision = Tri::True;
      p.witness = m;
      return p;
    }
  }
  return p;
}

Tri leq(const GeneralizedNumber& x, const GeneralizedNumber& y, const DecisionConfig& cfg) {
  GeneralizedNumber d = y - x;
  if (d.is_exact()) return tri_of(d.exact().is_zero() || d.exact().leading_coeff() > 0);
  if (is_negligible(d, cfg) == Tri::True) return Tri::True;
  if (strictly_positive(d, cfg).decision == Tri::True) return Tri::True;
  const SampledNet& s = d.sampled();
  const EpsilonGrid& g = s.grid();
  auto clearly_negative = [&](std::size_t i) {
    const LogReal& v = s.sample(i);
    return v.sign() < 0 && v.log_magnitude() > cfg.v_cut * g.log_eps(i);
  };
  bool any_tail = false;
  for (std::size_t i = g.tail_begin(); i < g.size(); ++i) any_tail = any_tail || clearly_negative(i);
  if (!any_tail) return Tri::True;
  for (std::size_t i = g.late_tail_begin(); i < g.size(); ++i)
    if (clearly_negative(i)) return Tri::False;
  return Tri::Undecidable;
}

Tri is_negligible(const GeneralizedNumber& x, const DecisionConfig& cfg) {
  if (x.is_exact()) return tri_of(x.exact().is_zero());
  Valuation v = valuation(x, cfg);
  if (v.negligible()) return Tri::True;
  return v.reliable ? Tri::False : Tri::Undecidable;
}

Tri is_infinitesimal(const GeneralizedNumber& x, const DecisionConfig& cfg) {
  if (x.is_exact()) return tri_of(x.exact().is_zero() || x.exact().leading_exponent() > 0);
  Valuation v = valuation(x, cfg);
  if (v.negligible()) return Tri::True;
  if (!v.reliable) return Tri::Undecidable;
  if (v.value > cfg.margin) return Tri::True;
  if (v.value < -cfg.margin) return Tri::False;
  // A slope near zero with a flat tail is a nonzero standard part.
  const SampledNet& s = x.sampled();
  const EpsilonGrid& g = s.grid();
  double lo = kInf, hi = -kInf;
  for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
    if (s.sample(i).is_zero()) continue;
    lo = std::min(lo, s.sample(i).log_magnitude());
    hi = std::max(hi, s.sample(i).log_magnitude());
  }
  return hi - lo < 0.1 ? Tri::False : Tri::Undecidable;
}

Tri is_invertible(const GeneralizedNumber& x, const DecisionConfig& cfg) {
  return strictly_positive(abs(x), cfg).decision;
}

GeneralizedNumber norm_squared(const GenVec& v) {
  GeneralizedNumber acc;
  for (const auto& c : v) acc = acc + c * c;
  return acc;
}

GenVec sub(const GenVec& a, const GenVec& b) {
  if (a.size() != b.size()) throw PreconditionError("dimension mismatch");
  GenVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Tri ball_member_point(const GenVec& y, const GenVec& x, const GeneralizedNumber& rho,
                      const NetConfig& cfg) {
  if (strictly_positive(rho, cfg.decide).decision == Tri::False)
    throw PreconditionError("ball radius must be strictly positive");
  GeneralizedNumber d2 = norm_squared(sub(y, x));
  if (d2.is_exact() && rho.is_exact()) {
    // rho > |y-x| iff rho^2 - |y-x|^2 > 0 because rho + |y-x| is invertible.
    return strictly_positive(rho * rho - d2, cfg.decide).decision;
  }
  GeneralizedNumber dist = sqrt(d2, cfg.grid);
  return strictly_positive(rho - dist, cfg.decide).decision;
}

}  // namespace cgsf
