#include "cgsf/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

constexpr double kHugeLog = 690.0;  // stands in for an infinite distance

bool all_exact(const GenVec& v) {
  return std::all_of(v.begin(), v.end(), [](const GeneralizedNumber& c) { return c.is_exact(); });
}

bool positive_lead(const ExactNet& x) { return !x.is_zero() && x.leading_coeff() > 0; }

// Eventual squared distance from an exact point to an exact box.
ExactNet exact_dist_sq(const GenVec& x, const Box& b) {
  ExactNet acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ExactNet below = b.lo[i].exact() - x[i].exact();
    ExactNet above = x[i].exact() - b.hi[i].exact();
    if (positive_lead(below)) acc = acc + below * below;
    else if (positive_lead(above)) acc = acc + above * above;
  }
  return acc;
}

std::optional<ExactNet> exact_union_dist_sq(const GenVec& x, const BoxNet& k) {
  if (!all_exact(x) || !k.all_exact() || k.empty()) return std::nullopt;
  std::optional<ExactNet> best;
  for (const auto& b : k.boxes()) {
    ExactNet d = exact_dist_sq(x, b);
    if (!best || positive_lead(*best - d)) best = d;
  }
  return best;
}

// Distance at grid index i computed in the log domain so that huge or tiny
// coordinates do not overflow.
LogReal dist_at(const GenVec& x, const BoxNet& k, const EpsilonGrid& grid, std::size_t i) {
  std::vector<LogReal> xv(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) xv[d] = x[d].log_value_at(grid, i);
  bool found = false;
  LogReal best;
  for (const auto& b : k.boxes()) {
    LogReal acc;
    bool empty = false;
    for (std::size_t d = 0; d < x.size() && !empty; ++d) {
      LogReal lo = b.lo[d].log_value_at(grid, i);
      LogReal hi = b.hi[d].log_value_at(grid, i);
      if (compare(lo, hi) > 0) {
        empty = true;
        break;
      }
      if (compare(xv[d], lo) < 0) {
        LogReal gap = lo - xv[d];
        acc = acc + gap * gap;
      } else if (compare(xv[d], hi) > 0) {
        LogReal gap = xv[d] - hi;
        acc = acc + gap * gap;
      }
    }
    if (empty) continue;
    LogReal dist = acc.sqrt();
    if (!found || compare(dist, best) < 0) best = dist;
    found = true;
  }
  return found ? best : LogReal(1, kHugeLog);
}

GeneralizedNumber sampled_distance(const GenVec& x, const BoxNet& k, const EpsilonGrid& grid) {
  std::vector<LogReal> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = dist_at(x, k, grid, i);
  return SampledNet(grid, std::move(s));
}

const EpsilonGrid& grid_of(const GenVec& x, const EpsilonGrid& fallback) {
  for (const auto& c : x)
    if (c.grid()) return *c.grid();
  return fallback;
}

GeneralizedNumber box_margin(const GenVec& x, const Box& b, const EpsilonGrid& grid) {
  GeneralizedNumber m;
  for (std::size_t d = 0; d < x.size(); ++d) {
    GeneralizedNumber md = gmin(x[d] - b.lo[d], b.hi[d] - x[d], grid);
    m = d == 0 ? md : gmin(m, md, grid);
  }
  return m;
}

}  // namespace

BoxNet::BoxNet(std::size_t dim, std::vector<Box> boxes, const DecisionConfig& cfg) : dim_(dim) {
  for (auto& b : boxes) {
    if (b.lo.size() != dim || b.hi.size() != dim) throw PreconditionError("box dimension mismatch");
    for (std::size_t d = 0; d < dim; ++d) {
      if (leq(b.lo[d], b.hi[d], cfg) == Tri::False)
        throw PreconditionError("box is empty for all small eps (lo > hi eventually)");
    }
    boxes_.push_back(std::move(b));
  }
}

bool BoxNet::all_exact() const {
  return std::all_of(boxes_.begin(), boxes_.end(),
                     [](const Box& b) { return cgsf::all_exact(b.lo) && cgsf::all_exact(b.hi); });
}

std::vector<BoxAt> BoxNet::at(const EpsilonGrid& grid, std::size_t i) const {
  std::vector<BoxAt> out;
  out.reserve(boxes_.size());
  for (const auto& b : boxes_) {
    BoxAt a;
    a.lo.resize(dim_);
    a.hi.resize(dim_);
    for (std::size_t d = 0; d < dim_; ++d) {
      a.lo[d] = b.lo[d].value_at(grid, i);
      a.hi[d] = b.hi[d].value_at(grid, i);
      if (a.lo[d] > a.hi[d]) a.empty = true;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::optional<int> is_functionally_compact(const InternalSet& k, const DecisionConfig& cfg) {
  for (int n = 0; n <= cfg.m_max; ++n) {
    GeneralizedNumber bound = eps_pow(-n);
    bool ok = true;
    for (const auto& b : k.net().boxes()) {
      for (std::size_t d = 0; d < k.dim() && ok; ++d) {
        ok = leq(abs(b.lo[d]), bound, cfg) == Tri::True && leq(abs(b.hi[d]), bound, cfg) == Tri::True;
      }
      if (!ok) break;
    }
    if (ok) return n;
  }
  return std::nullopt;
}

FunctionallyCompactSet make_functionally_compact(const InternalSet& k, const DecisionConfig& cfg) {
  auto n = is_functionally_compact(k, cfg);
  if (!n) throw PreconditionError("set is not sharply bounded within eps^-m_max");
  return FunctionallyCompactSet(k, *n);
}

Tri member_internal(const GenVec& x, const InternalSet& k, const NetConfig& cfg) {
  if (x.size() != k.dim()) throw PreconditionError("dimension mismatch");
  if (k.net().empty()) return Tri::False;
  if (auto d = exact_union_dist_sq(x, k.net())) return tri_of(d->is_zero());
  return is_negligible(sampled_distance(x, k.net(), grid_of(x, cfg.grid)), cfg.decide);
}

GeneralizedNumber distance_to(const GenVec& x, const BoxNet& k, const EpsilonGrid& grid) {
  if (k.empty()) throw EmptySetError("distance to the empty set");
  if (auto d = exact_union_dist_sq(x, k)) {
    if (d->is_zero() || d->is_monomial()) return sqrt(GeneralizedNumber(*d), grid);
    ExactNet sq = *d;
    return SampledNet::from_generator(grid, [sq](double le) { return sq.eval_log(le).sqrt(); });
  }
  return sampled_distance(x, k, grid_of(x, grid));
}

ExteriorResult member_exterior(const GenVec& x, const FunctionallyCompactSet& k, const NetConfig& cfg) {
  if (x.size() != k.dim()) throw PreconditionError("dimension mismatch");
  ExteriorResult r;
  if (k.net().empty()) {
    r.decision = Tri::True;
    r.q = 0;
    return r;
  }
  if (auto d = exact_union_dist_sq(x, k.net())) {
    if (d->is_zero()) {
      r.decision = Tri::False;
    } else {
      r.decision = Tri::True;
      r.q = static_cast<int>(std::floor(d->leading_exponent() / 2.0)) + 1;
    }
    return r;
  }
  GeneralizedNumber dist = sampled_distance(x, k.net(), grid_of(x, cfg.grid));
  if (is_negligible(dist, cfg.decide) == Tri::True) {
    r.decision = Tri::False;
    return r;
  }
  Positivity p = strictly_positive(dist, cfg.decide);
  r.decision = p.decision;
  r.q = p.witness;
  return r;
}

FunctionallyCompactSet interleaving_union(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                                          const DecisionConfig& cfg) {
  if (k.dim() != h.dim()) throw PreconditionError("dimension mismatch");
  std::vector<Box> boxes = k.net().boxes();
  boxes.insert(boxes.end(), h.net().boxes().begin(), h.net().boxes().end());
  return make_functionally_compact(InternalSet(BoxNet(k.dim(), std::move(boxes), cfg)), cfg);
}

FunctionallyCompactSet intersection(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                                    const NetConfig& cfg) {
  if (k.dim() != h.dim()) throw PreconditionError("dimension mismatch");
  std::vector<Box> boxes;
  for (const auto& a : k.net().boxes()) {
    for (const auto& b : h.net().boxes()) {
      Box c;
      bool eventually_empty = false;
      for (std::size_t d = 0; d < k.dim(); ++d) {
        c.lo.push_back(gmax(a.lo[d], b.lo[d], cfg.grid));
        c.hi.push_back(gmin(a.hi[d], b.hi[d], cfg.grid));
        eventually_empty = eventually_empty || leq(c.lo[d], c.hi[d], cfg.decide) == Tri::False;
      }
      if (!eventually_empty) boxes.push_back(std::move(c));
    }
  }
  return make_functionally_compact(InternalSet(BoxNet(k.dim(), std::move(boxes), cfg.decide)), cfg.decide);
}

FunctionallyCompactSet product(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                               const DecisionConfig& cfg) {
  std::vector<Box> boxes;
  for (const auto& a : k.net().boxes()) {
    for (const auto& b : h.net().boxes()) {
      Box c = a;
      c.lo.insert(c.lo.end(), b.lo.begin(), b.lo.end());
      c.hi.insert(c.hi.end(), b.hi.begin(), b.hi.end());
      boxes.push_back(std::move(c));
    }
  }
  return make_functionally_compact(InternalSet(BoxNet(k.dim() + h.dim(), std::move(boxes), cfg)), cfg);
}

FunctionallyCompactSet interval(const GeneralizedNumber& a, const GeneralizedNumber& b,
                                const DecisionConfig& cfg) {
  if (!a.is_exact() || !b.is_exact()) throw PreconditionError("interval endpoints must be exact");
  if (leq(a, b, cfg) != Tri::True) throw PreconditionError("interval needs a <= b");
  return box_set({a}, {b}, cfg);
}

FunctionallyCompactSet box_set(const GenVec& lo, const GenVec& hi, const DecisionConfig& cfg) {
  if (lo.size() != hi.size()) throw PreconditionError("corner dimension mismatch");
  return make_functionally_compact(InternalSet(BoxNet(lo.size(), {Box{lo, hi}}, cfg)), cfg);
}

namespace {

// Scaled by the largest gap so that tiny gaps do not underflow when squared.
double point_box_dist(const std::vector<double>& p, const BoxAt& b) {
  std::vector<double> gap(p.size());
  double top = 0;
  for (std::size_t d = 0; d < p.size(); ++d) {
    gap[d] = std::max({b.lo[d] - p[d], 0.0, p[d] - b.hi[d]});
    top = std::max(top, gap[d]);
  }
  if (top == 0 || !std::isfinite(top)) return top;
  double s = 0;
  for (double g : gap) s += (g / top) * (g / top);
  return top * std::sqrt(s);
}

double point_union_dist(const std::vector<double>& p, const std::vector<BoxAt>& u) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : u)
    if (!b.empty) best = std::min(best, point_box_dist(p, b));
  return best;
}

// sup over a in A of d(a, B) for box unions at one epsilon.
double directed_hausdorff(const std::vector<BoxAt>& a, const std::vector<BoxAt>& b, std::size_t dim) {
  double best = 0.0;
  for (const auto& box : a) {
    if (box.empty) continue;
    std::vector<std::vector<double>> cand(dim);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) {
      std::vector<double> faces;
      for (const auto& o : b)
        if (!o.empty) {
          faces.push_back(o.lo[d]);
          faces.push_back(o.hi[d]);
        }
      std::sort(faces.begin(), faces.end());
      std::vector<double>& c = cand[d];
      c = {box.lo[d], box.hi[d]};
      for (double f : faces)
        if (f >= box.lo[d] && f <= box.hi[d]) c.push_back(f);
      for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
        double mid = 0.5 * (faces[i] + faces[i + 1]);
        if (mid >= box.lo[d] && mid <= box.hi[d]) c.push_back(mid);
      }
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      std::size_t n = c.size();
      for (std::size_t i = 0; i + 1 < n; ++i) c.push_back(0.5 * (c[i] + c[i + 1]));
      std::sort(c.begin(), c.end());
      total *= c.size();
    }
    if (total > 200000) throw PreconditionError("Hausdorff candidate set too large");
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> p(dim);
    std::vector<double> best_p;
    double box_best = -1.0;
    for (std::size_t n = 0; n < total; ++n) {
      for (std::size_t d = 0; d < dim; ++d) p[d] = cand[d][idx[d]];
      double v = point_union_dist(p, b);
      if (v > box_best) {
        box_best = v;
        best_p = p;
      }
      for (std::size_t d = 0; d < dim; ++d) {
        if (++idx[d] < cand[d].size()) break;
        idx[d] = 0;
      }
    }
    if (dim > 1 && std::isfinite(box_best)) {
      // Compass ascent from the best candidate; the distance function is
      // piecewise smooth, so this only polishes the candidate value.
      double step = 0;
      for (std::size_t d = 0; d < dim; ++d) step = std::max(step, (box.hi[d] - box.lo[d]) / 8);
      while (step > 1e-15 * (1 + std::fabs(box_best))) {
        bool moved = false;
        for (std::size_t d = 0; d < dim && !moved; ++d) {
          for (double dir : {-1.0, 1.0}) {
            std::vector<double> q = best_p;
            q[d] = std::clamp(q[d] + dir * step, box.lo[d], box.hi[d]);
            double v = point_union_dist(q, b);
            if (v > box_best) {
              box_best = v;
              best_p = q;
              moved = true;
              break;
            }
          }
        }
        if (!moved) step /= 2;
      }
    }
    best = std::max(best, box_best);
  }
  return best;
}

}  // namespace

HausdorffResult hausdorff_equal(const InternalSet& k, const InternalSet& l, const NetConfig& cfg) {
  if (k.dim() != l.dim()) throw PreconditionError("dimension mismatch");
  const EpsilonGrid& grid = cfg.grid;
  std::vector<LogReal> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto a = k.net().at(grid, i);
    auto b = l.net().at(grid, i);
    bool a_empty = std::all_of(a.begin(), a.end(), [](const BoxAt& x) { return x.empty; });
    bool b_empty = std::all_of(b.begin(), b.end(), [](const BoxAt& x) { return x.empty; });
    if (a_empty && b_empty) {
      s[i] = LogReal();
    } else if (a_empty || b_empty) {
      s[i] = LogReal(1, kHugeLog);
    } else {
      double d = std::max(directed_hausdorff(a, b, k.dim()), directed_hausdorff(b, a, k.dim()));
      s[i] = std::isfinite(d) ? LogReal::from_double(d) : LogReal(1, kHugeLog);
    }
  }
  HausdorffResult r;
  r.distance = SampledNet(grid, std::move(s));
  r.exact = k.dim() == 1;
  r.equal = is_negligible(r.distance, cfg.decide);
  return r;
}

Positivity member_strongly_internal(const GenVec& x, const StronglyInternalSet& u, const NetConfig& cfg) {
  if (x.size() != u.dim()) throw PreconditionError("dimension mismatch");
  Positivity p;
  if (u.is_whole()) {
    p.decision = Tri::True;
    return p;
  }
  if (u.net().empty()) {
    p.decision = Tri::False;
    return p;
  }
  const EpsilonGrid& grid = grid_of(x, cfg.grid);
  GeneralizedNumber best;
  bool first = true;
  for (const auto& b : u.net().boxes()) {
    GeneralizedNumber m = box_margin(x, b, grid);
    best = first ? m : gmax(best, m, grid);
    first = false;
  }
  return strictly_positive(best, cfg.decide);
}

int moderateness_witness(const StronglyInternalSet& u, const DecisionConfig& cfg) {
  if (u.is_whole()) return 0;
  if (u.net().empty()) throw EmptySetError("strongly internal set has no boxes");
  const Box& b = u.net().boxes().front();
  GenVec centre(u.dim());
  for (std::size_t d = 0; d < u.dim(); ++d) centre[d] = (b.lo[d] + b.hi[d]) * GeneralizedNumber(0.5);
  NetConfig nc;
  nc.decide = cfg;
  Positivity p = member_strongly_internal(centre, u, nc);
  if (p.decision != Tri::True || !p.witness)
    throw PreconditionError("cannot certify a member of the strongly internal set");
  int n = std::max(0, *p.witness);
  while (n <= cfg.m_max) {
    bool ok = true;
    for (const auto& c : centre) ok = ok && leq(abs(c), eps_pow(-n), cfg) == Tri::True;
    if (ok) break;
    ++n;
  }
  return n;
}

FunctionallyCompactSet exhaustion(const StronglyInternalSet& u, int j, const DecisionConfig& cfg) {
  int n = moderateness_witness(u, cfg);
  if (j < n) throw PreconditionError("exhaustion index below the moderateness witness " + std::to_string(n));
  GeneralizedNumber inner = eps_pow(j);
  GeneralizedNumber outer = eps_pow(-j);
  std::vector<Box> boxes;
  EpsilonGrid grid;
  auto clip_box = [&](const GenVec& lo, const GenVec& hi) {
    Box c;
    bool eventually_empty = false;
    for (std::size_t d = 0; d < u.dim(); ++d) {
      c.lo.push_back(gmax(lo[d] + inner, -outer, grid));
      c.hi.push_back(gmin(hi[d] - inner, outer, grid));
      eventually_empty = eventually_empty || leq(c.lo[d], c.hi[d], cfg) == Tri::False;
    }
    if (!eventually_empty) boxes.push_back(std::move(c));
  };
  if (u.is_whole()) {
    Box c{GenVec(u.dim(), -outer), GenVec(u.dim(), outer)};
    boxes.push_back(std::move(c));
  } else {
    for (const auto& b : u.net().boxes()) clip_box(b.lo, b.hi);
  }
  return make_functionally_compact(InternalSet(BoxNet(u.dim(), std::move(boxes), cfg)), cfg);
}

CoveringIndex find_covering_index(const FunctionallyCompactSet& k, const StronglyInternalSet& u,
                                  const DecisionConfig& cfg) {
  if (k.dim() != u.dim()) throw PreconditionError("dimension mismatch");
  CoveringIndex r;
  r.witness = moderateness_witness(u, cfg);
  r.bound_index = k.sharp_bound();
  EpsilonGrid grid;
  if (!u.is_whole() && !k.net().empty()) {
    std::optional<GeneralizedNumber> min_margin;
    for (const auto& kb : k.net().boxes()) {
      std::optional<GeneralizedNumber> best;
      for (const auto& ub : u.net().boxes()) {
        GeneralizedNumber m;
        for (std::size_t d = 0; d < k.dim(); ++d) {
          GeneralizedNumber md = gmin(kb.lo[d] - ub.lo[d], ub.hi[d] - kb.hi[d], grid);
          m = d == 0 ? md : gmin(m, md, grid);
        }
        best = best ? gmax(*best, m, grid) : m;
      }
      if (strictly_positive(*best, cfg).decision != Tri::True)
        throw ContainmentError("a box of K is not inside U with an invertible margin");
      min_margin = min_margin ? gmin(*min_margin, *best, grid) : *best;
    }
    int j = -cfg.m_max;
    while (j <= cfg.m_max && leq(eps_pow(j), *min_margin, cfg) != Tri::True) ++j;
    if (j > cfg.m_max) throw ContainmentError("margin of K inside U is below eps^m_max");
    r.margin_index = j;
  }
  r.j = std::max({r.margin_index, r.bound_index, r.witness});
  return r;
}

Tri member_sharp_union(const GenVec& x, const SharpUnion& u, const NetConfig& cfg) {
  Tri acc = Tri::False;
  for (const auto& part : u.parts) acc = tri_or(acc, member_strongly_internal(x, part, cfg).decision);
  return acc;
}

}  // namespace cgsf
