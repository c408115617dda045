#include "cgsf/norms.hpp"

#include <algorithm>
#include <cmath>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<MultiIndex> indices_up_to(std::size_t dim, int order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  auto rec = [&](auto&& self, std::size_t d, int left) -> void {
    if (d == dim) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[d] = k;
      self(self, d + 1, left - k);
    }
  };
  rec(rec, 0, order);
  return out;
}

int order_of(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

std::vector<BoxAt> widened(std::vector<BoxAt> boxes) {
  for (auto& b : boxes)
    for (std::size_t d = 0; d < b.lo.size(); ++d) {
      b.lo[d] -= 1.0;
      b.hi[d] += 1.0;
    }
  return boxes;
}

// sup[m][i] for m = 0..order at every grid index.
std::vector<std::vector<double>> sup_table(const CompactlySupportedGsf& f, int order, bool global,
                                           const GsfConfig& cfg, bool& converged) {
  const EpsilonGrid& grid = cfg.net.grid;
  std::vector<std::vector<double>> sup(order + 1, std::vector<double>(grid.size(), 0.0));
  const std::size_t n = f.dim();
  for (const auto& u : f.gsf().components()) {
    if (u.is_zero()) continue;
    if (n == 1) {
      BoxOptimizer opt(u, cfg.opt);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        auto boxes = f.support().net().at(grid, i);
        if (global) boxes = widened(std::move(boxes));
        bool ok = true;
        std::vector<double> s = opt.abs_sup_table(boxes, grid.eps(i), order, &ok);
        converged = converged && ok;
        for (int m = 0; m <= order; ++m) sup[m][i] = std::max(sup[m][i], s[m]);
      }
      continue;
    }
    for (const auto& alpha : indices_up_to(n, order)) {
      BoxOptimizer opt(derivative(u, alpha), cfg.opt);
      int m = order_of(alpha);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        auto boxes = f.support().net().at(grid, i);
        if (global) boxes = widened(std::move(boxes));
        Extrema e = opt.extrema(boxes, grid.eps(i));
        converged = converged && e.converged;
        sup[m][i] = std::max({sup[m][i], std::fabs(e.min), std::fabs(e.max)});
      }
    }
  }
  // The norm of order m takes every order up to m.
  for (int m = 1; m <= order; ++m)
    for (std::size_t i = 0; i < grid.size(); ++i) sup[m][i] = std::max(sup[m][i], sup[m - 1][i]);
  return sup;
}

std::vector<NormValue> table(const CompactlySupportedGsf& f, int order, bool global, const GsfConfig& cfg) {
  if (order < 0) throw PreconditionError("norm order must be nonnegative");
  if (f.dim() == 1 && order > kMaxNormOrder)
    throw PreconditionError("norm order above " + std::to_string(kMaxNormOrder) + " exceeds the jet capacity");
  bool converged = true;
  auto sup = sup_table(f, order, global, cfg, converged);
  std::vector<NormValue> out;
  for (int m = 0; m <= order; ++m) {
    NormValue v;
    v.value = from_samples(cfg.net.grid, sup[m]);
    v.order = m;
    v.global = global;
    v.converged = converged;
    out.push_back(std::move(v));
  }
  return out;
}

CompactlySupportedGsf difference(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g,
                                 const GsfConfig& cfg) {
  return sub(f, g, cfg);
}

}  // namespace

std::vector<NormValue> norm_table(const CompactlySupportedGsf& f, int order, const GsfConfig& cfg) {
  return table(f, order, false, cfg);
}

NormValue norm_m(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg) {
  return table(f, m, false, cfg).back();
}

NormValue norm_m_global(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg) {
  if (!f.verified()) throw PreconditionError("compact support has not been verified");
  NormValue global = table(f, m, true, cfg).back();
  NormValue local = table(f, m, false, cfg).back();
  const EpsilonGrid& grid = cfg.net.grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double a = global.value.value_at(grid, i), b = local.value.value_at(grid, i);
    if (std::fabs(a - b) > 1e-6 * std::max(std::fabs(a), std::fabs(b))) global.support_mismatch = true;
  }
  return global;
}

Valuation v_m(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg) {
  return valuation(norm_m(f, m, cfg).value, cfg.net.decide);
}

double p_m(const CompactlySupportedGsf& f, int m, const GsfConfig& cfg) {
  return std::exp(-v_m(f, m, cfg).value);
}

Tri ball_member(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int m,
                const GeneralizedNumber& rho, const GsfConfig& cfg) {
  if (strictly_positive(rho, cfg.net.decide).decision != Tri::True)
    throw PreconditionError("ball radius must be strictly positive");
  NormValue d = norm_m(difference(f, g, cfg), m, cfg);
  return strictly_positive(rho - d.value, cfg.net.decide).decision;
}

bool c_set_member(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int m, double r,
                  const GsfConfig& cfg) {
  if (!(r > 0)) throw PreconditionError("radius must be positive");
  return p_m(difference(f, g, cfg), m, cfg) < r;
}

Tri u_set_member(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int m,
                 const GeneralizedNumber& rho, const GsfConfig& cfg) {
  if (strictly_positive(rho, cfg.net.decide).decision != Tri::True)
    throw PreconditionError("radius must be strictly positive");
  NormValue d = norm_m(difference(f, g, cfg), m, cfg);
  return is_infinitesimal(divide(d.value, rho, cfg.net.grid), cfg.net.decide);
}

MetricReport metric_from_valuations(const std::vector<Valuation>& v) {
  MetricReport r;
  r.n_trunc = static_cast<int>(v.size());
  r.v = v;
  for (int n = 1; n <= r.n_trunc; ++n) {
    const Valuation& vn = v[n - 1];
    double lift = std::exp(std::min(n - vn.value, 0.0));  // e^{min(n - v_n, 0)}; 0 when v_n = +inf
    double te = std::exp(-static_cast<double>(n)) * lift;
    double t2 = std::ldexp(1.0, -n) * lift;
    r.d_e += te;
    r.d_2 += t2;
    if (vn.reliable) {
      r.d_e_lo += te;
      r.d_e_hi += te;
      r.d_2_lo += t2;
      r.d_2_hi += t2;
    } else {
      // Any valuation is possible: the term lies between 0 and its cap.
      r.d_e_hi += std::exp(-static_cast<double>(n));
      r.d_2_hi += std::ldexp(1.0, -n);
    }
  }
  r.tail_e = std::exp(-static_cast<double>(r.n_trunc)) / (std::exp(1.0) - 1.0);
  r.tail_2 = std::ldexp(1.0, -r.n_trunc);
  // True sums lie in [partial, partial + tail].
  r.upper_bound_holds = r.d_e_lo <= r.d_2_hi + r.tail_2;
  r.lower_bound_holds = r.d_2_lo / 2 <= r.d_e_hi + r.tail_e;
  return r;
}

MetricReport metric(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g, int n_trunc,
                    const GsfConfig& cfg) {
  if (n_trunc < 1) throw PreconditionError("truncation index must be positive");
  std::vector<std::string> notices;
  if (f.dim() == 1 && n_trunc > kMaxNormOrder) {
    notices.push_back("truncation lowered from " + std::to_string(n_trunc) + " to " +
                      std::to_string(kMaxNormOrder) + " by the derivative order limit");
    n_trunc = kMaxNormOrder;
  }
  CompactlySupportedGsf h = difference(f, g, cfg);
  std::vector<Valuation> v;
  if (h.gsf().components().size() == 1 && h.gsf().component().is_zero()) {
    Valuation z;
    z.value = kInf;
    v.assign(n_trunc, z);
  } else {
    auto norms = norm_table(h, n_trunc, cfg);
    for (int n = 1; n <= n_trunc; ++n) v.push_back(valuation(norms[n].value, cfg.net.decide));
  }
  MetricReport r = metric_from_valuations(v);
  for (int n = 1; n <= n_trunc; ++n)
    if (!v[n - 1].reliable) r.notices.push_back("v_" + std::to_string(n) + " unreliable; term bracketed");
  r.notices.insert(r.notices.begin(), notices.begin(), notices.end());
  return r;
}

AbsorbentWitness absorbent_witness(const CompactlySupportedGsf& u, const GeneralizedNumber& rho, int m,
                                   const GsfConfig& cfg) {
  if (strictly_positive(rho, cfg.net.decide).decision != Tri::True)
    throw PreconditionError("radius must be strictly positive");
  AbsorbentWitness w;
  NormValue norm = norm_m(u, m, cfg);
  Valuation q = valuation(norm.value, cfg.net.decide);
  Valuation p = valuation(rho, cfg.net.decide);
  if (q.negligible()) {
    w.b = 0.0;
  } else {
    w.b = std::floor(q.value - p.value - 0.5);
    if (!q.reliable || !p.reliable) {
      w.b -= 1.0;
      w.widened = true;
      w.notices.push_back("unreliable valuation; witness lowered by one");
    }
  }
  GeneralizedNumber scaled = eps_pow(-w.b) * norm.value;
  w.verified = is_infinitesimal(divide(scaled, rho, cfg.net.grid), cfg.net.decide);
  return w;
}

std::vector<int> extract_schedule(const std::vector<CompactlySupportedGsf>& seq, const GsfConfig& cfg) {
  std::vector<int> schedule;
  const int len = static_cast<int>(seq.size());
  auto within = [&](int n, int m, int k) {
    GeneralizedNumber gap = eps_pow(k) - norm_m(sub(seq[n], seq[m], cfg), k, cfg).value;
    return strictly_positive(gap, cfg.net.decide).decision == Tri::True;
  };
  for (int k = 0;; ++k) {
    int found = -1;
    for (int c = schedule.empty() ? 0 : schedule.back() + 1; c + 1 < len && found < 0; ++c) {
      bool all = true;
      for (int n = c + 1; n < len && all; ++n) all = within(n, c, k);
      if (all) found = c;
    }
    if (found < 0) return schedule;
    schedule.push_back(found);
  }
}

CauchyLimit cauchy_limit(const std::vector<CompactlySupportedGsf>& seq, const std::vector<int>& schedule,
                         int certify_up_to, const GsfConfig& cfg) {
  if (schedule.size() < 2) throw PreconditionError("schedule needs at least two indices");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] < 0 || static_cast<std::size_t>(schedule[k]) >= seq.size())
      throw PreconditionError("schedule index out of range");
    if (k > 0 && schedule[k] <= schedule[k - 1]) throw PreconditionError("schedule must increase");
  }
  const EpsilonGrid& grid = cfg.net.grid;
  const auto& first = seq[schedule[0]];
  for (int idx : schedule)
    if (!same_boxes(seq[idx].support(), first.support()))
      throw PreconditionError("sequence members must share one support witness");
  std::vector<CauchyStep> steps;
  std::vector<SmoothExpr> corrections;
  SmoothExpr limit_expr = first.gsf().component();
  if (first.gsf().codim() != 1) throw PreconditionError("Cauchy limits are built for scalar functions");
  for (std::size_t k = 0; k + 1 < schedule.size(); ++k) {
    CompactlySupportedGsf h = sub(seq[schedule[k + 1]], seq[schedule[k]], cfg);
    int kk = static_cast<int>(k);
    GeneralizedNumber gap = eps_pow(kk) - norm_m(h, kk, cfg).value;
    Positivity pos = strictly_positive(gap, cfg.net.decide);
    if (pos.decision != Tri::True)
      throw NotCauchyError("||u_" + std::to_string(schedule[k + 1]) + " - u_" + std::to_string(schedule[k]) +
                           "||_" + std::to_string(kk) + " < eps^" + std::to_string(kk) + " does not hold");
    // First grid index from which the gap stays positive.
    std::size_t from = grid.size();
    while (from > 0 && gap.value_at(grid, from - 1) > 0) --from;
    double cutoff = grid.eps(from) * std::sqrt(grid.base());
    if (!steps.empty()) cutoff = std::min(cutoff, steps.back().cutoff);
    steps.push_back({kk, *pos.witness, cutoff});
    corrections.push_back(h.gsf().component());
    if (!h.gsf().component().is_zero()) limit_expr = limit_expr + eps_cut(cutoff) * h.gsf().component();
  }
  Gsf lg(limit_expr, first.gsf().domain());
  // Every correction is supported in the common witness, so the limit is too.
  int order = first.verified_to_order();
  for (int idx : schedule) order = std::min(order, seq[idx].verified_to_order());
  CompactlySupportedGsf limit = CompactSupportAccess::make(lg, first.support(), order, first.exterior_samples());
  CauchyLimit out{limit, schedule, corrections, steps, {}, true};
  int top = std::min<int>(certify_up_to, static_cast<int>(schedule.size()) - 1);
  for (int p = 1; p <= top; ++p) {
    CompactlySupportedGsf diff = limit_difference(out, seq, schedule[p], cfg);
    std::vector<NormValue> norms;
    if (!diff.gsf().component().is_zero()) norms = norm_table(diff, p, cfg);
    for (int i = 0; i <= p; ++i) {
      Tri holds = Tri::True;
      if (!norms.empty()) holds = strictly_positive(eps_pow(p - 1) - norms[i].value, cfg.net.decide).decision;
      out.certificate.push_back({p, i, holds});
      out.certified = out.certified && holds == Tri::True;
    }
  }
  return out;
}

CompactlySupportedGsf limit_difference(const CauchyLimit& lim, const std::vector<CompactlySupportedGsf>& seq, int n,
                                       const GsfConfig& cfg) {
  if (lim.schedule.empty() || n < 0 || static_cast<std::size_t>(n) >= seq.size())
    throw PreconditionError("sequence index out of range");
  CompactlySupportedGsf head = sub(seq[lim.schedule.back()], seq[n], cfg);
  SmoothExpr e = head.gsf().component();
  for (std::size_t k = 0; k < lim.corrections.size(); ++k)
    if (!lim.corrections[k].is_zero())
      e = e + (eps_cut(lim.steps[k].cutoff) - constant(1.0)) * lim.corrections[k];
  return CompactSupportAccess::make(Gsf(e, head.gsf().domain()), head.support(),
                                    std::min(head.verified_to_order(), lim.limit.verified_to_order()),
                                    head.exterior_samples());
}

}  // namespace cgsf
