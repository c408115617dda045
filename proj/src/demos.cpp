#include <cmath>

#include "cgsf/errors.hpp"
#include "cgsf/idempotent.hpp"
#include "cgsf/verify.hpp"

namespace cgsf {

namespace {

// Collects claims and what was observed for each.
class Claims {
 public:
  void add(const std::string& claim, bool holds, Json observed) {
    passed_ = passed_ && holds;
    list_.push_back(Json{{"claim", claim}, {"holds", holds}, {"observed", std::move(observed)}});
  }
  bool passed() const { return passed_; }
  Json list() const { return list_; }

 private:
  bool passed_ = true;
  Json list_ = Json::array();
};

StronglyInternalSet open_box(double a, double b) {
  return StronglyInternalSet(BoxNet(1, {Box{{GeneralizedNumber(a)}, {GeneralizedNumber(b)}}}));
}

CompactlySupportedGsf verified_or_throw(const Gsf& f, const FunctionallyCompactSet& k, int order,
                                        const GsfConfig& cfg) {
  auto v = verify_compact_support(f, k, order, cfg);
  if (auto* c = std::get_if<CompactlySupportedGsf>(&v)) return *c;
  throw PreconditionError("support verification failed: " + to_json(std::get<Counterexample>(v)).dump());
}

DemoReport interleaving_gap(const GsfConfig& cfg) {
  const NetConfig& net = cfg.net;
  Claims c;
  // U = (-1, 1) u (2, 4), H = [-1/2, 1/2], K = [5/2, 7/2]; x alternates 0 and 3.
  SharpUnion u{{open_box(-1, 1), open_box(2, 4)}};
  FunctionallyCompactSet h = interval(-0.5, 0.5, net.decide), k = interval(2.5, 3.5, net.decide);
  FunctionallyCompactSet hk = interleaving_union(h, k, net.decide);
  IdempotentSet s = IdempotentSet::dyadic_alternating(0);
  GenVec x{interleave({0.0, 3.0}, {s, s.complement()}, net.grid)};
  Tri in_interl = member_internal(x, hk, net);
  Tri in_u = member_sharp_union(x, u, net);
  c.add("x is a member of interl(H u K)", in_interl == Tri::True, std::string(to_string(in_interl)));
  c.add("x is not a member of U", in_u == Tri::False, std::string(to_string(in_u)));
  // phi + psi with phi supported in H and psi in K is supported in interl(H u K).
  Gsf sum = Gsf::global(parse_expr("bump(2*x1) + bump(2*x1 - 6)"), 1);
  bool supported = std::holds_alternative<CompactlySupportedGsf>(verify_compact_support(sum, hk, 1, cfg));
  Tri positive = support_positive_at(sum, x, cfg).decision;
  c.add("phi + psi is compactly supported in interl(H u K)", supported, supported);
  c.add("phi + psi is strictly positive at x, a point outside U", positive == Tri::True,
        std::string(to_string(positive)));
  return {"interleaving-gap", c.passed(), Json{{"x", to_json(x)}, {"claims", c.list()}}};
}

DemoReport delta_norms(const GsfConfig& cfg) {
  Claims c;
  CompactlySupportedGsf d = verified_or_throw(delta_embedding(1, 1.0), interval(-1.0, 1.0, cfg.net.decide), 4, cfg);
  auto table = norm_table(d, 4, cfg);
  Json rows = Json::array();
  for (int m = 0; m <= 4; ++m) {
    Valuation v = valuation(table[m].value, cfg.net.decide);
    rows.push_back(Json{{"m", m}, {"v_m", to_json(v)}, {"expected", -(m + 1)}});
    c.add("v_" + std::to_string(m) + "(delta) = " + std::to_string(-(m + 1)), std::fabs(v.value + (m + 1)) <= 0.05,
          v.value);
  }
  return {"delta-norms", c.passed(), Json{{"table", rows}, {"claims", c.list()}}};
}

DemoReport hausdorff_equal_demo(const GsfConfig& cfg) {
  const NetConfig& net = cfg.net;
  Claims c;
  // K the square [-1, 1]^2 and L the same square with a negligible hole at 0.
  GeneralizedNumber h = negligible_radius(net.grid), one(1.0), m1(-1.0);
  BoxNet square(2, {Box{{m1, m1}, {one, one}}}, net.decide);
  BoxNet punched(2,
                 {Box{{m1, h}, {one, one}}, Box{{m1, m1}, {one, -h}}, Box{{m1, -h}, {-h, h}}, Box{{h, -h}, {one, h}}},
                 net.decide);
  FunctionallyCompactSet k = make_functionally_compact(InternalSet(square), net.decide);
  FunctionallyCompactSet l = make_functionally_compact(InternalSet(punched), net.decide);
  HausdorffResult hd = hausdorff_equal(k.internal(), l.internal(), net);
  c.add("[K] = [L]", hd.equal == Tri::True, std::string(to_string(hd.equal)));
  bool distance_ok = true;
  for (std::size_t i = 0; i < net.grid.size(); ++i) {
    double want = h.value_at(net.grid, i);
    distance_ok = distance_ok && std::fabs(hd.distance.value_at(net.grid, i) - want) <= 1e-12 * std::max(want, 1e-300);
  }
  c.add("Hausdorff distance of the representatives is the hole radius", distance_ok, to_json(valuation(hd.distance)));
  // u = 1 near 0 and 0 outside K: it vanishes on the complement of K but not on that of L.
  Gsf u = Gsf::global(parse_expr("plateau(x1^2 + x2^2)"), 2);
  GenVec hole{GeneralizedNumber(0.0), GeneralizedNumber(0.0)};
  GeneralizedNumber at_hole = eval_scalar(u, hole, cfg);
  bool hole_in_lc = true;
  for (std::size_t i = 0; i < net.grid.size(); ++i) {
    for (const auto& b : punched.at(net.grid, i))
      hole_in_lc = hole_in_lc && !(b.lo[0] <= 0.0 && 0.0 <= b.hi[0] && b.lo[1] <= 0.0 && 0.0 <= b.hi[1]);
    hole_in_lc = hole_in_lc && at_hole.value_at(net.grid, i) == 1.0;
  }
  c.add("u = 1 at the centre of the hole, a point of every complement of L_eps", hole_in_lc, to_json(at_hole));
  Tri hole_exterior = member_exterior(hole, l, net).decision;
  c.add("the centre of the hole is not exterior to L", hole_exterior != Tri::True, std::string(to_string(hole_exterior)));
  bool same = true;
  Json decisions = Json::array();
  for (const char* p : {"2, 0", "1 + eps, 0", "0, -1 - eps^2", "0, 0", "0.5, 0.5", "1, 1"}) {
    GenVec x = parse_point(p);
    Tri dk = member_exterior(x, k, net).decision, dl = member_exterior(x, l, net).decision;
    same = same && dk == dl;
    decisions.push_back(Json{{"point", p}, {"K", to_string(dk)}, {"L", to_string(dl)}});
  }
  c.add("exterior membership agrees for K and L", same, decisions);
  bool vk = std::holds_alternative<CompactlySupportedGsf>(verify_compact_support(u, k, 2, cfg));
  bool vl = std::holds_alternative<CompactlySupportedGsf>(verify_compact_support(u, l, 2, cfg));
  c.add("u is verified against both representatives", vk && vl, Json{{"K", vk}, {"L", vl}});
  return {"hausdorff-equal", c.passed(), Json{{"claims", c.list()}}};
}

DemoReport completeness(const GsfConfig& cfg) {
  Claims c;
  const int certify = 8;
  std::vector<CompactlySupportedGsf> seq;
  std::string text = "bump(x1)";
  FunctionallyCompactSet k = interval(-1.0, 1.0, cfg.net.decide);
  for (int n = 0; n <= 16; ++n) {
    if (n > 0) text += " + eps^" + std::to_string(n) + "*bump(x1)";
    seq.push_back(verified_or_throw(Gsf::global(parse_expr(text), 1), k, 1, cfg));
  }
  std::vector<int> schedule = extract_schedule(seq, cfg);
  c.add("a schedule of at least " + std::to_string(certify + 1) + " indices exists",
        static_cast<int>(schedule.size()) > certify, schedule);
  CauchyLimit lim = cauchy_limit(seq, schedule, certify, cfg);
  c.add("||u - u_{n_p}||_i < eps^(p-1) for i <= p <= " + std::to_string(certify), lim.certified,
        static_cast<int>(lim.certificate.size()));
  Json direct = Json::array();
  bool all = true;
  for (int n = 1; n <= certify; ++n) {
    NormValue d = norm_m(limit_difference(lim, seq, n, cfg), n, cfg);
    Tri holds = strictly_positive(eps_pow(n - 1) - d.value, cfg.net.decide).decision;
    all = all && holds == Tri::True;
    direct.push_back(Json{{"n", n}, {"holds", to_string(holds)}, {"v_n", to_json(valuation(d.value, cfg.net.decide))}});
  }
  c.add("||u - u_n||_n < eps^(n-1) for n <= " + std::to_string(certify), all, direct);
  Json steps = Json::array();
  for (const auto& s : lim.steps) steps.push_back(Json{{"k", s.k}, {"witness", s.witness}, {"cutoff", s.cutoff}});
  return {"completeness", c.passed(), Json{{"schedule", schedule}, {"steps", steps}, {"claims", c.list()}}};
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"interleaving-gap", "delta-norms", "hausdorff-equal", "completeness"};
  return names;
}

DemoReport run_demo(const std::string& name, const GsfConfig& cfg) {
  DemoReport out;
  if (name == "interleaving-gap") out = interleaving_gap(cfg);
  else if (name == "delta-norms") out = delta_norms(cfg);
  else if (name == "hausdorff-equal") out = hausdorff_equal_demo(cfg);
  else if (name == "completeness") out = completeness(cfg);
  else throw PreconditionError("unknown demo '" + name + "'");
  out.report = Json{{"demo", name}, {"passed", out.passed}, {"report", out.report}};
  return out;
}

}  // namespace cgsf
