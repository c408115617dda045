#include "cgsf/gsf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "cgsf/errors.hpp"
#include "cgsf/evaluator.hpp"

namespace cgsf {

namespace {

int order_of(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) {
    if (a < 0) throw PreconditionError("negative entry in multi-index");
    s += a;
  }
  return s;
}

// All multi-indices in `dim` variables with total order at most `order`,
// graded by order.
std::vector<MultiIndex> multi_indices(std::size_t dim, int order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  for (int total = 0; total <= order; ++total) {
    auto rec = [&](auto&& self, std::size_t d, int left) -> void {
      if (d + 1 == dim) {
        cur[d] = left;
        out.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[d] = k;
        self(self, d + 1, left - k);
      }
    };
    if (dim == 0) {
      if (total == 0) out.push_back({});
      continue;
    }
    rec(rec, 0, total);
  }
  return out;
}

// log|x| at an arbitrary epsilon, when x can be regenerated there.
std::shared_ptr<const Generator> generator_of(const GeneralizedNumber& x) {
  if (x.is_exact()) {
    ExactNet e = x.exact();
    return std::make_shared<const Generator>([e](double log_eps) { return e.eval_log(log_eps); });
  }
  return x.sampled().generator();
}

std::vector<double> point_at(const GenVec& x, const EpsilonGrid& grid, std::size_t i) {
  std::vector<double> p(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) p[d] = x[d].value_at(grid, i);
  return p;
}

GeneralizedNumber sample_expr(const CompiledExpr& c, const GenVec& x, const EpsilonGrid& grid) {
  std::vector<LogReal> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    s[i] = LogReal::from_double(c.eval(point_at(x, grid, i), grid.eps(i)));
  std::vector<std::shared_ptr<const Generator>> gens;
  for (const auto& xi : x) {
    auto g = generator_of(xi);
    if (!g) return SampledNet(grid, std::move(s));
    gens.push_back(std::move(g));
  }
  auto compiled = std::make_shared<const CompiledExpr>(c);
  Generator gen = [compiled, gens](double log_eps) {
    std::vector<double> p(gens.size());
    for (std::size_t d = 0; d < gens.size(); ++d) p[d] = (*gens[d])(log_eps).to_double();
    return LogReal::from_double(compiled->eval(p, std::exp(log_eps)));
  };
  return SampledNet(grid, std::move(s), std::make_shared<const Generator>(std::move(gen)));
}

SmoothExpr expr_of(const GeneralizedNumber& c, const char* what) {
  if (!c.is_exact()) throw PreconditionError(std::string(what) + " must be an exact generalized number");
  return from_exact(c.exact());
}

void check_dims(const Gsf& f, const Gsf& g) {
  if (f.dim() != g.dim() || f.codim() != g.codim()) throw PreconditionError("dimension mismatch");
}

StronglyInternalSet common_domain(const Gsf& f, const Gsf& g) {
  return f.is_global() ? g.domain() : f.domain();
}

template <class Op>
Gsf combine(const Gsf& f, const Gsf& g, Op op) {
  check_dims(f, g);
  std::vector<SmoothExpr> c;
  for (std::size_t i = 0; i < f.codim(); ++i) c.push_back(op(f.component(i), g.component(i)));
  return Gsf(std::move(c), common_domain(f, g));
}

// Candidate points at distance eps^q outside one face of a box of K.
GenVec exterior_candidate(const FunctionallyCompactSet& k, int q, std::mt19937_64& rng) {
  const auto& boxes = k.net().boxes();
  const Box& b = boxes[std::uniform_int_distribution<std::size_t>(0, boxes.size() - 1)(rng)];
  const std::size_t n = k.dim();
  std::size_t axis = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  bool upper = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  GenVec x(n);
  for (std::size_t d = 0; d < n; ++d) {
    if (d == axis) {
      x[d] = upper ? b.hi[d] + eps_pow(q) : b.lo[d] - eps_pow(q);
    } else {
      // Lattice fractions keep the point exact when the corners are.
      double t = std::uniform_int_distribution<int>(0, 8)(rng) / 8.0;
      x[d] = b.lo[d] + GeneralizedNumber(t) * (b.hi[d] - b.lo[d]);
    }
  }
  return x;
}

bool same_net(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h) {
  const auto& a = k.net().boxes();
  const auto& b = h.net().boxes();
  if (a.size() != b.size() || k.dim() != h.dim()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t d = 0; d < k.dim(); ++d) {
      GeneralizedNumber dl = a[i].lo[d] - b[i].lo[d], dh = a[i].hi[d] - b[i].hi[d];
      if (!dl.is_exact() || !dh.is_exact() || !dl.exact().is_zero() || !dh.exact().is_zero()) return false;
    }
  return true;
}

std::vector<ExteriorSample> samples_exterior_to(const std::vector<ExteriorSample>& s,
                                                const FunctionallyCompactSet& k, const NetConfig& cfg) {
  std::vector<ExteriorSample> out;
  for (const auto& e : s)
    if (member_exterior(e.point, k, cfg).decision == Tri::True) out.push_back(e);
  return out;
}

}  // namespace

Gsf::Gsf(SmoothExpr u, StronglyInternalSet domain) : Gsf(std::vector<SmoothExpr>{std::move(u)}, std::move(domain)) {}

Gsf::Gsf(std::vector<SmoothExpr> components, StronglyInternalSet domain)
    : components_(std::move(components)), domain_(std::move(domain)) {
  if (components_.empty()) throw PreconditionError("a function needs at least one component");
  for (const auto& c : components_)
    if (static_cast<std::size_t>(arity(c)) > domain_.dim())
      throw PreconditionError("expression uses more variables than the domain dimension");
}

Gsf Gsf::global(SmoothExpr u, std::size_t dim) { return Gsf(std::move(u), StronglyInternalSet::whole(dim)); }

Gsf Gsf::global(std::vector<SmoothExpr> components, std::size_t dim) {
  return Gsf(std::move(components), StronglyInternalSet::whole(dim));
}

Gsf Gsf::with_certificate(ModeratenessCertificate c) const {
  Gsf g = *this;
  g.certificate_ = std::move(c);
  return g;
}

std::optional<ExactNet> exact_substitute(const SmoothExpr& e, const std::vector<ExactNet>& x) {
  switch (e.op()) {
    case Op::Const: return ExactNet::constant(e.const_value());
    case Op::Eps: return ExactNet::monomial(1.0, 1.0);
    case Op::Var:
      if (static_cast<std::size_t>(e.node().index) >= x.size()) return std::nullopt;
      return x[e.node().index];
    case Op::Add:
    case Op::Mul: {
      std::optional<ExactNet> acc;
      for (const auto& a : e.args()) {
        auto v = exact_substitute(a, x);
        if (!v) return std::nullopt;
        acc = !acc ? *v : (e.op() == Op::Add ? *acc + *v : *acc * *v);
      }
      return acc;
    }
    case Op::Pow: {
      const SmoothExpr& b = e.args()[0];
      double p = e.node().value;
      if (b.op() == Op::Eps) return ExactNet::monomial(1.0, p);
      if (p < 0 || p != std::floor(p) || p > 64) return std::nullopt;
      auto v = exact_substitute(b, x);
      if (!v) return std::nullopt;
      return v->pow(static_cast<unsigned>(p));
    }
    default: return std::nullopt;
  }
}

EvalResult eval(const Gsf& f, const GenVec& x, const GsfConfig& cfg) {
  if (x.size() != f.dim()) throw PreconditionError("point dimension does not match the domain");
  EvalResult r;
  if (!f.is_global()) {
    Tri in = member_strongly_internal(x, f.domain(), cfg.net).decision;
    if (in == Tri::False) throw PreconditionError("point is not in the domain");
    if (in == Tri::Undecidable) r.warnings.push_back("domain membership undecidable on the grid");
  }
  bool all_exact = std::all_of(x.begin(), x.end(), [](const GeneralizedNumber& v) { return v.is_exact(); });
  if (all_exact) {
    std::vector<ExactNet> ex;
    for (const auto& v : x) ex.push_back(v.exact());
    std::vector<GeneralizedNumber> vals;
    for (const auto& c : f.components()) {
      if (!is_polynomial(c)) break;
      auto v = exact_substitute(c, ex);
      if (!v) break;
      vals.emplace_back(*v);
    }
    if (vals.size() == f.codim()) {
      r.value = std::move(vals);
      r.exact_path = true;
      return r;
    }
  }
  const EpsilonGrid& grid = cfg.net.grid;
  for (const auto& c : f.components()) r.value.push_back(sample_expr(CompiledExpr(c), x, grid));
  return r;
}

GeneralizedNumber eval_scalar(const Gsf& f, const GenVec& x, const GsfConfig& cfg) {
  if (f.codim() != 1) throw PreconditionError("scalar evaluation of a vector-valued function");
  return eval(f, x, cfg).value[0];
}

Gsf derivative(const Gsf& f, const MultiIndex& alpha, const GsfConfig& cfg) {
  if (alpha.size() != f.dim()) throw PreconditionError("multi-index length does not match the dimension");
  if (order_of(alpha) > cfg.max_order) throw PreconditionError("derivative order exceeds the configured maximum");
  std::vector<SmoothExpr> c;
  for (const auto& u : f.components()) c.push_back(derivative(u, alpha));
  return Gsf(std::move(c), f.domain());
}

CompactlySupportedGsf derivative(const CompactlySupportedGsf& f, const MultiIndex& alpha, const GsfConfig& cfg) {
  Gsf d = derivative(f.gsf(), alpha, cfg);
  int order = f.verified_to_order() - order_of(alpha);
  return CompactSupportAccess::make(std::move(d), f.support(), std::max(order, -1), f.exterior_samples());
}

namespace {

void check_inside_domain(const Gsf& f, const FunctionallyCompactSet& k) {
  if (k.dim() != f.dim()) throw PreconditionError("set and function dimensions differ");
  if (k.net().empty()) throw EmptySetError("the set is empty");
  if (!f.is_global()) find_covering_index(k, f.domain());
}

}  // namespace

ExtremeValues extreme_values(const Gsf& f, const FunctionallyCompactSet& k, const GsfConfig& cfg) {
  if (f.codim() != 1) throw PreconditionError("extreme values need a scalar function");
  check_inside_domain(f, k);
  const EpsilonGrid& grid = cfg.net.grid;
  const std::size_t n = k.dim();
  BoxOptimizer opt(f.component(), cfg.opt);
  std::vector<double> lo(grid.size()), hi(grid.size());
  std::vector<std::vector<double>> amin(n, std::vector<double>(grid.size())), amax = amin;
  ExtremeValues out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Extrema e = opt.extrema(k.net().at(grid, i), grid.eps(i));
    out.converged = out.converged && e.converged;
    lo[i] = e.min;
    hi[i] = e.max;
    for (std::size_t d = 0; d < n; ++d) {
      amin[d][i] = e.found ? e.argmin[d] : 0.0;
      amax[d][i] = e.found ? e.argmax[d] : 0.0;
    }
  }
  out.min = from_samples(grid, lo);
  out.max = from_samples(grid, hi);
  for (std::size_t d = 0; d < n; ++d) {
    out.argmin.push_back(from_samples(grid, amin[d]));
    out.argmax.push_back(from_samples(grid, amax[d]));
  }
  return out;
}

ImageEnclosure image_enclosure(const Gsf& f, const FunctionallyCompactSet& k, const GsfConfig& cfg) {
  check_inside_domain(f, k);
  GenVec lo, hi;
  for (std::size_t c = 0; c < f.codim(); ++c) {
    ExtremeValues e = extreme_values(Gsf(f.component(c), f.domain()), k, cfg);
    lo.push_back(e.min);
    hi.push_back(e.max);
  }
  bool exact = f.codim() == 1 && k.dim() == 1 && k.net().boxes().size() == 1;
  return {box_set(lo, hi, cfg.net.decide), exact};
}

Positivity support_positive_at(const Gsf& f, const GenVec& x, const GsfConfig& cfg) {
  EvalResult r = eval(f, x, cfg);
  return strictly_positive(norm_squared(r.value), cfg.net.decide);
}

SupportVerification verify_compact_support(const Gsf& f, const FunctionallyCompactSet& k, int order,
                                           const GsfConfig& cfg) {
  if (k.dim() != f.dim()) throw PreconditionError("set and function dimensions differ");
  if (order < 0) throw PreconditionError("verification order must be nonnegative");
  if (!f.is_global() && !k.net().empty()) find_covering_index(k, f.domain());
  const std::size_t n = f.dim();
  std::vector<MultiIndex> alphas = multi_indices(n, order);
  std::vector<std::vector<CompiledExpr>> derivs;
  for (const auto& alpha : alphas) {
    std::vector<CompiledExpr> per;
    for (const auto& u : f.components()) per.emplace_back(derivative(u, alpha));
    derivs.push_back(std::move(per));
  }
  std::vector<ExteriorSample> logged;
  auto check = [&](const GenVec& x, const char* where) -> std::optional<Counterexample> {
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      for (const auto& c : derivs[a]) {
        GeneralizedNumber v = sample_expr(c, x, cfg.net.grid);
        Tri neg = is_negligible(v, cfg.net.decide);
        if (neg != Tri::True) return Counterexample{x, alphas[a], neg, valuation(v, cfg.net.decide), where};
      }
    }
    return std::nullopt;
  };
  auto in_domain = [&](const GenVec& x) {
    return f.is_global() || member_strongly_internal(x, f.domain(), cfg.net).decision == Tri::True;
  };

  // A point far outside K: its first coordinate grows faster than every corner.
  int far_q = k.net().empty() ? 1 : k.sharp_bound() + 1;
  GenVec far(n, GeneralizedNumber(0.0));
  if (n > 0) far[0] = eps_pow(-far_q);
  if (in_domain(far) && member_exterior(far, k, cfg.net).decision == Tri::True) {
    if (auto ce = check(far, "far")) return *ce;
    logged.push_back({far, -far_q});
  }
  if (!k.net().empty()) {
    std::mt19937_64 rng(cfg.opt.seed);
    const int qs = cfg.net.decide.m_max + 1;
    int accepted = 0;
    for (int attempt = 0; attempt < 4 * cfg.exterior_budget && accepted < cfg.exterior_budget; ++attempt) {
      int q = accepted % qs;
      GenVec x = exterior_candidate(k, q, rng);
      if (!in_domain(x) || member_exterior(x, k, cfg.net).decision != Tri::True) continue;
      ++accepted;
      if (auto ce = check(x, "exterior")) return *ce;
      logged.push_back({x, q});
    }
  }
  return CompactSupportAccess::make(f, k, order, std::move(logged));
}

ModeratenessCertificate certify_moderateness(const Gsf& f, const std::vector<GenVec>& points, int order,
                                             const GsfConfig& cfg) {
  ModeratenessCertificate cert;
  cert.grid = cfg.net.grid;
  cert.order = order;
  cert.worst_valuation = std::numeric_limits<double>::infinity();
  for (const auto& alpha : multi_indices(f.dim(), order)) {
    for (const auto& u : f.components()) {
      CompiledExpr c(derivative(u, alpha));
      for (const auto& x : points) {
        Valuation v = valuation(sample_expr(c, x, cfg.net.grid), cfg.net.decide);
        cert.worst_valuation = std::min(cert.worst_valuation, v.value);
        if (v.value <= -cfg.net.decide.v_cut) cert.passed = false;
      }
    }
  }
  cert.points_tested = static_cast<int>(points.size());
  return cert;
}

Gsf extend_global(const CompactlySupportedGsf& f, const GsfConfig& cfg) {
  if (!f.verified()) throw PreconditionError("compact support has not been verified");
  const Gsf& g = f.gsf();
  const EpsilonGrid& grid = cfg.net.grid;
  ModeratenessCertificate cert;
  cert.grid = grid;
  cert.order = f.verified_to_order();
  cert.worst_valuation = std::numeric_limits<double>::infinity();
  // Outside K the net vanishes, so the global sup is the sup over K.
  for (const auto& alpha : multi_indices(g.dim(), f.verified_to_order())) {
    for (const auto& u : g.components()) {
      BoxOptimizer opt(derivative(u, alpha), cfg.opt);
      std::vector<double> sup(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        Extrema e = opt.extrema(f.support().net().at(grid, i), grid.eps(i));
        sup[i] = std::max(std::fabs(e.min), std::fabs(e.max));
      }
      Valuation v = valuation(from_samples(grid, sup), cfg.net.decide);
      cert.worst_valuation = std::min(cert.worst_valuation, v.value);
      if (v.value <= -cfg.net.decide.v_cut) cert.passed = false;
    }
  }
  cert.points_tested = static_cast<int>(f.exterior_samples().size());
  return Gsf(g.components(), StronglyInternalSet::whole(g.dim())).with_certificate(cert);
}

CompactlySupportedGsf cutoff_embed_cgf(const Gsf& f, const GeneralizedNumber& j, const GsfConfig& cfg) {
  if (!f.is_global()) throw PreconditionError("cutoff embedding needs a function defined on the whole space");
  if (!j.is_exact()) throw PreconditionError("cutoff radius must be an exact generalized number");
  if (strictly_positive(j, cfg.net.decide).decision != Tri::True || !(j.exact().leading_exponent() < 0))
    throw PreconditionError("cutoff radius must be positive and diverge");
  const std::size_t n = f.dim();
  SmoothExpr r2;
  for (std::size_t d = 0; d < n; ++d) r2 = r2 + var(static_cast<int>(d)) * var(static_cast<int>(d));
  SmoothExpr jj = from_exact(j.exact());
  SmoothExpr cut = plateau(constant(4.0) * r2 / (jj * jj));
  std::vector<SmoothExpr> c;
  for (const auto& u : f.components()) c.push_back(cut * u);
  Gsf g(std::move(c), f.domain());
  GeneralizedNumber half = j * GeneralizedNumber(0.5);
  FunctionallyCompactSet k = box_set(GenVec(n, -half), GenVec(n, half), cfg.net.decide);
  auto v = verify_compact_support(g, k, std::min(2, cfg.max_order), cfg);
  if (auto* ce = std::get_if<Counterexample>(&v))
    throw PreconditionError("cutoff function failed its support check at a " + ce->where + " point");
  return std::get<CompactlySupportedGsf>(v);
}

MollifiedRepresentative mollified_representative(const CompactlySupportedGsf& f, double a, const GsfConfig& cfg) {
  const Gsf& g = f.gsf();
  const FunctionallyCompactSet& k = f.support();
  int j = g.is_global() ? std::max(k.sharp_bound(), 0) : find_covering_index(k, g.domain(), cfg.net.decide).j;
  if (a < j) throw PreconditionError("exponent a = " + std::to_string(a) + " is below the covering index " +
                                     std::to_string(j));
  const std::size_t n = g.dim();
  SmoothExpr w = pow(eps(), a);
  SmoothExpr half_w = constant(0.5) * w;
  SmoothExpr outside = constant(1.0);  // product of (1 - indicator) over boxes
  std::vector<Box> fat;
  for (const auto& b : k.net().boxes()) {
    SmoothExpr ind = constant(1.0);
    Box fb;
    for (std::size_t d = 0; d < n; ++d) {
      SmoothExpr lo = expr_of(b.lo[d], "box corner");
      SmoothExpr hi = expr_of(b.hi[d], "box corner");
      SmoothExpr x = var(static_cast<int>(d));
      // 1 on [lo - w/2, hi + w/2], 0 outside [lo - w, hi + w].
      ind = ind * step((x - lo + w) / half_w) * step((hi + w - x) / half_w);
      fb.lo.push_back(b.lo[d] - eps_pow(a));
      fb.hi.push_back(b.hi[d] + eps_pow(a));
    }
    outside = outside * (constant(1.0) - ind);
    fat.push_back(std::move(fb));
  }
  SmoothExpr chi = constant(1.0) - outside;
  std::vector<SmoothExpr> c;
  for (const auto& u : g.components()) c.push_back(chi * u);
  Gsf mg(std::move(c), g.domain());
  FunctionallyCompactSet h = make_functionally_compact(InternalSet(BoxNet(n, std::move(fat), cfg.net.decide)),
                                                       cfg.net.decide);
  int order = std::max(f.verified_to_order(), 0);
  auto v = verify_compact_support(mg, k, order, cfg);
  if (auto* ce = std::get_if<Counterexample>(&v))
    throw PreconditionError("mollified net failed its support check at a " + ce->where + " point");
  return {std::get<CompactlySupportedGsf>(v), h};
}

Gsf delta_embedding(std::size_t n, double plateau_radius) {
  if (!(plateau_radius > 0)) throw PreconditionError("plateau radius must be positive");
  if (n == 0) throw PreconditionError("dimension must be positive");
  SmoothExpr r2;
  for (std::size_t d = 0; d < n; ++d) r2 = r2 + var(static_cast<int>(d)) * var(static_cast<int>(d));
  double p = plateau_radius;
  SmoothExpr arg = r2 / (constant(4 * p * p) * eps() * eps());
  return Gsf::global(pow(eps(), -static_cast<double>(n)) * plateau(arg), n);
}

Gsf add(const Gsf& f, const Gsf& g) { return combine(f, g, [](auto& a, auto& b) { return a + b; }); }
Gsf sub(const Gsf& f, const Gsf& g) { return combine(f, g, [](auto& a, auto& b) { return a - b; }); }
Gsf mul(const Gsf& f, const Gsf& g) { return combine(f, g, [](auto& a, auto& b) { return a * b; }); }

Gsf scale(const GeneralizedNumber& c, const Gsf& f) {
  SmoothExpr s = expr_of(c, "scalar");
  std::vector<SmoothExpr> out;
  for (const auto& u : f.components()) out.push_back(s * u);
  return Gsf(std::move(out), f.domain());
}

bool same_boxes(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h) { return same_net(k, h); }

FunctionallyCompactSet set_union(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                                 const DecisionConfig& cfg) {
  if (k.dim() != h.dim()) throw PreconditionError("dimension mismatch");
  std::vector<Box> boxes = k.net().boxes();
  boxes.insert(boxes.end(), h.net().boxes().begin(), h.net().boxes().end());
  return make_functionally_compact(InternalSet(BoxNet(k.dim(), std::move(boxes), cfg)), cfg);
}

namespace {

CompactlySupportedGsf combine_supported(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, Gsf sum,
                                        const GsfConfig& cfg) {
  int order = std::min(f.verified_to_order(), g.verified_to_order());
  if (same_net(f.support(), g.support())) {
    std::vector<ExteriorSample> s = f.exterior_samples();
    s.insert(s.end(), g.exterior_samples().begin(), g.exterior_samples().end());
    return CompactSupportAccess::make(std::move(sum), f.support(), order, std::move(s));
  }
  FunctionallyCompactSet u = set_union(f.support(), g.support(), cfg.net.decide);
  std::vector<ExteriorSample> s = samples_exterior_to(f.exterior_samples(), u, cfg.net);
  auto t = samples_exterior_to(g.exterior_samples(), u, cfg.net);
  s.insert(s.end(), t.begin(), t.end());
  return CompactSupportAccess::make(std::move(sum), std::move(u), order, std::move(s));
}

}  // namespace

CompactlySupportedGsf add(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, const GsfConfig& cfg) {
  return combine_supported(f, g, add(f.gsf(), g.gsf()), cfg);
}

CompactlySupportedGsf sub(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, const GsfConfig& cfg) {
  return combine_supported(f, g, sub(f.gsf(), g.gsf()), cfg);
}

CompactlySupportedGsf scale(const GeneralizedNumber& c, const CompactlySupportedGsf& f) {
  return CompactSupportAccess::make(scale(c, f.gsf()), f.support(), f.verified_to_order(), f.exterior_samples());
}

CompactlySupportedGsf mul(const CompactlySupportedGsf& f, const Gsf& g) {
  return CompactSupportAccess::make(mul(f.gsf(), g), f.support(), f.verified_to_order(), f.exterior_samples());
}

}  // namespace cgsf
