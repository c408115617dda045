#include "cgsf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cgsf/errors.hpp"
#include "cgsf/idempotent.hpp"

namespace cgsf {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void record(PropertyResult& r, bool ok, const Json& payload) {
  ++r.cases;
  if (ok) return;
  if (r.failures++ == 0) r.counterexample = payload;
}

PropertyResult named(const char* name) {
  PropertyResult r;
  r.name = name;
  return r;
}

ExactNet random_exact(std::mt19937_64& rng, int min_terms = 0) {
  std::uniform_int_distribution<int> count(min_terms, 4), coeff(-5, 5), half_expo(-6, 8);
  std::vector<AsymptoticTerm> t;
  int n = count(rng);
  for (int i = 0; i < n; ++i) t.push_back({static_cast<double>(coeff(rng)), half_expo(rng) / 2.0});
  return ExactNet(t);
}

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double lattice(std::mt19937_64& rng, int lo, int hi, double step) { return pick(rng, lo, hi) * step; }

GeneralizedNumber random_member(const EpsilonGrid& grid, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> s(grid.size());
  for (auto& v : s) v = u(rng);
  return from_samples(grid, s);
}

IdempotentSet random_idempotent(std::mt19937_64& rng) {
  switch (pick(rng, 0, 3)) {
    case 0: return IdempotentSet::dyadic_alternating(0);
    case 1: return IdempotentSet::dyadic_alternating(1);
    case 2: return IdempotentSet::intervals({{0.0, std::ldexp(1.0, -pick(rng, 5, 20))}});
    default: return IdempotentSet::finite({std::ldexp(1.0, -6), std::ldexp(1.0, -30), std::ldexp(1.0, -40)});
  }
}

std::string idempotent_name(const IdempotentSet& s) {
  switch (s.family()) {
    case IdempotentSet::Family::DyadicAlternating: return "dyadic_alternating";
    case IdempotentSet::Family::HarmonicAlternating: return "harmonic_alternating";
    case IdempotentSet::Family::Finite: return "finite";
    default: return "interval_union";
  }
}

StronglyInternalSet open_interval(double a, double b) {
  return StronglyInternalSet(BoxNet(1, {Box{{GeneralizedNumber(a)}, {GeneralizedNumber(b)}}}));
}

CompactlySupportedGsf supported(const std::string& text, int order, const GsfConfig& cfg,
                                double radius = 1.0) {
  auto v = verify_compact_support(Gsf::global(parse_expr(text), 1), interval(-radius, radius, cfg.net.decide), order,
                                  cfg);
  if (auto* c = std::get_if<CompactlySupportedGsf>(&v)) return *c;
  throw PreconditionError("support of '" + text + "' not verified in [-" + fmt(radius) + ", " + fmt(radius) + "]");
}

double at(const GeneralizedNumber& x, const EpsilonGrid& g, std::size_t i) { return x.value_at(g, i); }

// c * eps^b * (h), written so that the difference with f cancels symbolically.
std::string shifted(const std::string& f, double c, double b, const std::string& h) {
  return "(" + f + ") + " + fmt(c) + "*eps^" + fmt(b) + "*(" + h + ")";
}

}  // namespace

GeneralizedNumber negligible_radius(const EpsilonGrid& grid) {
  return SampledNet::from_generator(grid, [](double le) { return LogReal(1, -0.5 * le * le); });
}

std::string random_bump_combination(std::mt19937_64& rng, bool eps_powers) {
  int terms = pick(rng, 1, 3);
  std::string out;
  for (int t = 0; t < terms; ++t) {
    int k = 0;
    while (k == 0) k = pick(rng, -8, 8);
    int s = 1 << pick(rng, 0, 2);
    int reach = s - 1;  // centre j/s keeps [centre - 1/s, centre + 1/s] inside [-1, 1]
    double centre = static_cast<double>(pick(rng, -reach, reach)) / s;
    std::string term = fmt(k / 4.0);
    if (eps_powers) {
      int a = pick(rng, 0, 2);
      if (a > 0) term += "*eps^" + std::to_string(a);
    }
    term += "*bump(" + std::to_string(s) + "*x1";
    double shift = -s * centre;
    if (shift > 0) term += " + " + fmt(shift);
    if (shift < 0) term += " - " + fmt(-shift);
    term += ")";
    if (pick(rng, 0, 2) == 0) term += "*cos(" + std::to_string(pick(rng, 1, 3)) + "*x1)";
    out += (t == 0 ? "" : " + ") + term;
  }
  return out;
}

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
}

Json to_json(const PropertyResult& p) {
  return Json{{"property", p.name},         {"passed", p.passed()},   {"cases", p.cases},
              {"failures", p.failures},     {"counterexample", p.counterexample}, {"details", p.details}};
}

Json to_json(const SuiteReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  return Json{{"suite", r.suite}, {"seed", r.seed}, {"passed", r.passed()}, {"properties", props}};
}

PropertyResult check_ring_axioms(int count, std::uint64_t seed) {
  PropertyResult r = named("ring_axioms");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    ExactNet a = random_exact(rng), b = random_exact(rng), c = random_exact(rng);
    bool ok = (a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) && a * b == b * a &&
              a * (b + c) == a * b + a * c && (a - a).is_zero() && a * ExactNet::constant(1.0) == a;
    record(r, ok, Json{{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}});
  }
  return r;
}

PropertyResult check_ultrametric(int count, std::uint64_t seed, const DecisionConfig& cfg) {
  PropertyResult r = named("ultrametric");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    ExactNet x = random_exact(rng), y = random_exact(rng), z = random_exact(rng);
    double xz = sharp_distance(x, z, cfg), xy = sharp_distance(x, y, cfg), yz = sharp_distance(y, z, cfg);
    record(r, xz <= std::max(xy, yz),
           Json{{"x", to_string(x)}, {"y", to_string(y)}, {"z", to_string(z)}, {"d_xz", xz}, {"d_xy", xy},
                {"d_yz", yz}});
  }
  return r;
}

PropertyResult check_positivity_coherence(int count, std::uint64_t seed, const DecisionConfig& cfg) {
  PropertyResult r = named("positivity_coherence");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    ExactNet x = random_exact(rng);
    GeneralizedNumber gx(x);
    Positivity p = strictly_positive(gx, cfg);
    bool lead = !x.is_zero() && x.leading_coeff() > 0;
    bool invertible_nonneg = is_invertible(gx, cfg) == Tri::True && leq(0.0, gx, cfg) == Tri::True;
    bool ok = (p.decision == Tri::True) == lead && invertible_nonneg == lead;
    if (p.decision == Tri::True) {
      ok = ok && p.witness && leq(eps_pow(*p.witness), gx, cfg) == Tri::True;
    } else {
      for (int m = -cfg.m_max; m <= cfg.m_max && ok; ++m) ok = leq(eps_pow(m), gx, cfg) != Tri::True;
    }
    record(r, ok, Json{{"x", to_string(x)}, {"positivity", to_json(p)}, {"leading_positive", lead}});
  }
  return r;
}

PropertyResult check_valuation_bounds(int count, std::uint64_t seed, const DecisionConfig& cfg) {
  PropertyResult r = named("valuation_bounds");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    ExactNet x = random_exact(rng), y = random_exact(rng);
    double vx = valuation(x, cfg).value, vy = valuation(y, cfg).value;
    double vp = valuation(x * y, cfg).value, vs = valuation(x + y, cfg).value;
    bool ok = vp == vx + vy && vs >= std::min(vx, vy);
    record(r, ok, Json{{"x", to_string(x)}, {"y", to_string(y)}, {"v_product", vp}, {"v_sum", vs}});
  }
  return r;
}

PropertyResult check_idempotents(const NetConfig& cfg) {
  PropertyResult r = named("idempotents");
  const EpsilonGrid& g = cfg.grid;
  std::vector<IdempotentSet> sets = {IdempotentSet::dyadic_alternating(0), IdempotentSet::dyadic_alternating(1),
                                     IdempotentSet::harmonic_alternating(0), IdempotentSet::intervals({{0.0, 1e-3}}),
                                     IdempotentSet::finite({1.0 / 16, 1.0 / 64}), IdempotentSet::full()};
  GeneralizedNumber x = parse_exact_net("2 - 3*eps^2");
  for (const auto& s : sets) {
    GeneralizedNumber e = idempotent(s, g), ec = idempotent(s.complement(), g);
    GeneralizedNumber sq = e * e, one = e + ec;
    GeneralizedNumber same = interleave({x}, {IdempotentSet::full()}, g);
    bool ok = true;
    for (std::size_t i = 0; i < g.size(); ++i)
      ok = ok && at(sq, g, i) == at(e, g, i) && at(one, g, i) == 1.0 && at(same, g, i) == at(x, g, i);
    record(r, ok, Json{{"family", idempotent_name(s)}});
  }
  return r;
}

PropertyResult check_sampled_exact_agreement(int count, std::uint64_t seed, const NetConfig& cfg) {
  PropertyResult r = named("sampled_exact_agreement");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    ExactNet x = random_exact(rng, 1);
    if (x.is_zero()) continue;
    Valuation v = valuation(GeneralizedNumber(SampledNet::from_exact(cfg.grid, x)), cfg.decide);
    record(r, std::fabs(v.value - x.leading_exponent()) <= 0.05,
           Json{{"x", to_string(x)}, {"sampled", to_json(v)}, {"exact", x.leading_exponent()}});
  }
  return r;
}

PropertyResult check_exterior_idempotent(int count, std::uint64_t seed, const NetConfig& cfg) {
  PropertyResult r = named("exterior_idempotent");
  std::mt19937_64 rng(seed);
  const EpsilonGrid& g = cfg.grid;
  for (int i = 0; i < count; ++i) {
    // The probed edge sits at 0 so that offsets c*eps^p survive rounding on every grid point.
    bool above = pick(rng, 0, 1) == 1;
    double len = lattice(rng, 1, 8, 0.25);
    double a = above ? -len : 0.0, b = above ? 0.0 : len;
    FunctionallyCompactSet k = interval(a, b, cfg.decide);
    GeneralizedNumber inside(0.5 * (a + b));
    IdempotentSet s = random_idempotent(rng);
    double c = lattice(rng, 1, 8, 0.25);
    int p = pick(rng, 0, 3);
    GeneralizedNumber offset = GeneralizedNumber(c) * eps_pow(p);
    GeneralizedNumber edge(above ? b : a);
    GeneralizedNumber x = above ? edge + offset : edge - offset;
    // Exterior: interleaving with a member of K never lands in K.
    ExteriorResult ext = member_exterior({x}, k, cfg);
    GenVec y = interleave(std::vector<GenVec>{{x}, {inside}}, {s, s.complement()}, g);
    Tri y_in = member_internal(y, k, cfg);
    // Not exterior: z touches K on S, and the interleave through S is a member.
    GenVec z = interleave(std::vector<GenVec>{{x}, {edge}}, {s.complement(), s}, g);
    ExteriorResult z_ext = member_exterior(z, k, cfg);
    GenVec w = interleave(std::vector<GenVec>{z, {inside}}, {s, s.complement()}, g);
    Tri w_in = member_internal(w, k, cfg);
    bool ok = ext.decision == Tri::True && y_in == Tri::False && z_ext.decision != Tri::True && w_in == Tri::True;
    record(r, ok,
           Json{{"K", Json::array({a, b})},
                {"x", to_json(x)},
                {"S", idempotent_name(s)},
                {"x_exterior", to_string(ext.decision)},
                {"interleave_in_K", to_string(y_in)},
                {"z_exterior", to_string(z_ext.decision)},
                {"witness_in_K", to_string(w_in)}});
  }
  return r;
}

PropertyResult check_representative_independence(int count, std::uint64_t seed, const NetConfig& cfg) {
  PropertyResult r = named("representative_independence");
  std::mt19937_64 rng(seed);
  GeneralizedNumber h = negligible_radius(cfg.grid);
  for (int i = 0; i < count; ++i) {
    // Probes cluster around the endpoint at 0, where the negligible shift stays resolvable.
    double len = lattice(rng, 1, 8, 0.25);
    bool left = pick(rng, 0, 1) == 1;
    double a = left ? 0.0 : -len, b = left ? len : 0.0;
    FunctionallyCompactSet k = interval(a, b, cfg.decide);
    FunctionallyCompactSet l = make_functionally_compact(
        InternalSet(BoxNet(1, {Box{{GeneralizedNumber(a) + h}, {GeneralizedNumber(b) - h}}}, cfg.decide)),
        cfg.decide);
    if (hausdorff_equal(k.internal(), l.internal(), cfg).equal != Tri::True) {
      record(r, false, Json{{"K", Json::array({a, b})}, {"reason", "representatives not Hausdorff equal"}});
      continue;
    }
    for (int t = 0; t < 6; ++t) {
      GeneralizedNumber x = GeneralizedNumber(lattice(rng, -4, 4, 0.25)) * eps_pow(pick(rng, 0, 3));
      Tri dk = member_exterior({x}, k, cfg).decision, dl = member_exterior({x}, l, cfg).decision;
      record(r, dk == dl, Json{{"K", Json::array({a, b})}, {"x", to_json(x)}, {"in_K", to_string(dk)},
                               {"in_L", to_string(dl)}});
    }
  }
  return r;
}

PropertyResult check_interleaving_closure(int count, std::uint64_t seed, const NetConfig& cfg) {
  PropertyResult r = named("interleaving_closure");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    double a = lattice(rng, -8, 4, 0.25), b = a + lattice(rng, 1, 8, 0.25);
    StronglyInternalSet u = open_interval(a, b);
    auto member = [&] {
      return GeneralizedNumber(a + (b - a) * lattice(rng, 1, 15, 1.0 / 16)) +
             GeneralizedNumber(lattice(rng, -2, 2, 0.25)) * eps_pow(pick(rng, 1, 3));
    };
    GeneralizedNumber x = member(), y = member();
    IdempotentSet s = random_idempotent(rng);
    GenVec z = interleave(std::vector<GenVec>{{x}, {y}}, {s, s.complement()}, cfg.grid);
    double t = lattice(rng, 0, 8, 0.125);
    GenVec convex{GeneralizedNumber(t) * x + GeneralizedNumber(1 - t) * y};
    Tri zi = member_strongly_internal(z, u, cfg).decision, ci = member_strongly_internal(convex, u, cfg).decision;
    record(r, zi == Tri::True && ci == Tri::True,
           Json{{"U", Json::array({a, b})}, {"x", to_json(x)}, {"y", to_json(y)}, {"S", idempotent_name(s)},
                {"interleave", to_string(zi)}, {"convex", to_string(ci)}});
  }
  return r;
}

PropertyResult check_interleaving_gap(const NetConfig& cfg) {
  PropertyResult r = named("interleaving_gap");
  SharpUnion u{{open_interval(-1, 1), open_interval(2, 4)}};
  IdempotentSet s = IdempotentSet::dyadic_alternating(0);
  GenVec x{interleave({0.0, 3.0}, {s, s.complement()}, cfg.grid)};
  Tri zero = member_sharp_union({GeneralizedNumber(0.0)}, u, cfg);
  Tri three = member_sharp_union({GeneralizedNumber(3.0)}, u, cfg);
  Tri mixed = member_sharp_union(x, u, cfg);
  record(r, zero == Tri::True && three == Tri::True && mixed == Tri::False,
         Json{{"zero_in_U", to_string(zero)}, {"three_in_U", to_string(three)}, {"interleave_in_U", to_string(mixed)}});
  return r;
}

PropertyResult check_exhaustion_monotone(int count, std::uint64_t seed, const NetConfig& cfg) {
  PropertyResult r = named("exhaustion_monotone");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    double a = lattice(rng, -8, 4, 0.25), b = a + lattice(rng, 1, 8, 0.25);
    StronglyInternalSet u = open_interval(a, b);
    GeneralizedNumber x = pick(rng, 0, 1)
                              ? GeneralizedNumber(a) + GeneralizedNumber(lattice(rng, 1, 8, 0.25)) * eps_pow(pick(rng, 0, 6))
                              : GeneralizedNumber(a + (b - a) * lattice(rng, 1, 15, 1.0 / 16));
    Tri prev = member_internal({x}, exhaustion(u, 1, cfg.decide), cfg);
    for (int j = 2; j <= 8; ++j) {
      Tri next = member_internal({x}, exhaustion(u, j, cfg.decide), cfg);
      record(r, prev != Tri::True || next == Tri::True,
             Json{{"U", Json::array({a, b})}, {"x", to_json(x)}, {"j", j - 1}, {"next", to_string(next)}});
      prev = next;
    }
  }
  return r;
}

PropertyResult check_extreme_sandwich(int members, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("extreme_sandwich");
  std::mt19937_64 rng(seed);
  const EpsilonGrid& g = cfg.net.grid;
  struct Case {
    const char* text;
    double lo, hi;
  };
  for (Case c : {Case{"x1*(1-x1)", 0, 1}, Case{"sin(7*x1)*exp(-x1^2)", -1, 1}, Case{"eps^-1*bump(x1/eps)", -1, 1},
                 Case{"bump_d2(x1)", -1, 1}}) {
    Gsf f = Gsf::global(parse_expr(c.text), 1);
    ExtremeValues e = extreme_values(f, interval(c.lo, c.hi, cfg.net.decide), cfg);
    for (int t = 0; t < members; ++t) {
      GeneralizedNumber x = random_member(g, c.lo, c.hi, rng);
      GeneralizedNumber y = eval_scalar(f, {x}, cfg);
      bool ok = true;
      std::size_t bad = 0;
      for (std::size_t i = 0; i < g.size() && ok; ++i) {
        double lo = at(e.min, g, i), hi = at(e.max, g, i), v = at(y, g, i);
        double tol = 1e-9 * std::max({std::fabs(lo), std::fabs(hi), 1.0});
        ok = lo - tol <= v && v <= hi + tol;
        bad = i;
      }
      record(r, ok, Json{{"f", c.text}, {"x", to_json(x)}, {"eps_index", bad}});
    }
  }
  return r;
}

PropertyResult check_image(int members, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("image_functoriality");
  std::mt19937_64 rng(seed);
  for (const char* text : {"x1^2 - x1", "bump(x1)*cos(3*x1)", "eps^-1*bump(x1/eps)", "tanh(x1/eps)"}) {
    Gsf f = Gsf::global(parse_expr(text), 1);
    FunctionallyCompactSet k = interval(-1.0, 1.0, cfg.net.decide);
    ImageEnclosure im = image_enclosure(f, k, cfg);
    for (int t = 0; t < members; ++t) {
      GeneralizedNumber x = random_member(cfg.net.grid, -1, 1, rng);
      GenVec y = eval(f, {x}, cfg).value;
      Tri in = member_internal(y, im.set, cfg.net);
      record(r, in == Tri::True, Json{{"f", text}, {"x", to_json(x)}, {"member", to_string(in)}});
    }
  }
  return r;
}

PropertyResult check_support_equivalence(int points, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("support_equivalence");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<const char*, double>> cases = {{"bump(x1)", 1.0}, {"bump(x1/2)", 2.0}, {"bump(4*x1)", 0.25}};
  for (auto [text, radius] : cases) {
    Gsf f = Gsf::global(parse_expr(text), 1);
    for (double rad : {0.5, 1.0, 3.0}) {
      FunctionallyCompactSet k = interval(-rad, rad, cfg.net.decide);
      bool verified = std::holds_alternative<CompactlySupportedGsf>(verify_compact_support(f, k, 1, cfg));
      record(r, verified == (rad >= radius), Json{{"f", text}, {"K", Json::array({-rad, rad})}, {"verified", verified}});
      for (int t = 0; t < points; ++t) {
        GeneralizedNumber x(lattice(rng, -32, 32, 0.125));
        if (member_exterior({x}, k, cfg.net).decision != Tri::True) continue;
        Tri positive = support_positive_at(f, {x}, cfg).decision;
        bool ok = !(positive == Tri::True && verified);
        record(r, ok, Json{{"f", text}, {"K", Json::array({-rad, rad})}, {"x", to_json(x)},
                           {"positive", to_string(positive)}, {"verified", verified}});
      }
    }
  }
  return r;
}

PropertyResult check_monotone_in_k(const GsfConfig& cfg) {
  PropertyResult r = named("monotone_in_K");
  for (const char* text : {"bump(x1)", "plateau(x1)*sin(x1)", "eps*bump(2*x1 - 1)"}) {
    Gsf f = Gsf::global(parse_expr(text), 1);
    FunctionallyCompactSet k = interval(-1.0, 1.0, cfg.net.decide);
    if (!std::holds_alternative<CompactlySupportedGsf>(verify_compact_support(f, k, 2, cfg))) {
      record(r, false, Json{{"f", text}, {"reason", "not verified against [-1, 1]"}});
      continue;
    }
    for (const char* lo : {"-1.5", "-3", "-1 - eps", "-10"})
      for (const char* hi : {"1", "2 + eps^2", "10"}) {
        GeneralizedNumber a = GeneralizedNumber::parse(lo), b = GeneralizedNumber::parse(hi);
        FunctionallyCompactSet h = interval(a, b, cfg.net.decide);
        bool contains = leq(a, -1.0, cfg.net.decide) == Tri::True && leq(1.0, b, cfg.net.decide) == Tri::True;
        bool verified = std::holds_alternative<CompactlySupportedGsf>(verify_compact_support(f, h, 2, cfg));
        record(r, contains && verified, Json{{"f", text}, {"H", Json::array({lo, hi})}, {"box_inclusion", contains},
                                             {"verified", verified}});
      }
  }
  return r;
}

PropertyResult check_derivative_closure(const GsfConfig& cfg) {
  PropertyResult r = named("derivative_closure");
  for (const char* text : {"bump(x1)*cos(x1)", "eps^-1*bump(x1/eps)", "plateau(2*x1)*x1^3"}) {
    auto v = verify_compact_support(Gsf::global(parse_expr(text), 1), interval(-1.0, 1.0, cfg.net.decide), 3, cfg);
    if (!std::holds_alternative<CompactlySupportedGsf>(v)) {
      record(r, false, Json{{"f", text}, {"reason", "not verified against [-1, 1]"}});
      continue;
    }
    const auto& f = std::get<CompactlySupportedGsf>(v);
    for (int a = 1; a <= 3; ++a) {
      CompactlySupportedGsf d = derivative(f, MultiIndex{a}, cfg);
      bool again = std::holds_alternative<CompactlySupportedGsf>(
          verify_compact_support(d.gsf(), d.support(), 3 - a, cfg));
      record(r, d.verified_to_order() == 3 - a && again, Json{{"f", text}, {"alpha", a}, {"reverified", again}});
    }
  }
  return r;
}

PropertyResult check_extension_uniqueness(int count, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("extension_uniqueness");
  std::mt19937_64 rng(seed);
  const EpsilonGrid& g = cfg.net.grid;
  for (int i = 0; i < count; ++i) {
    std::string ft = random_bump_combination(rng, true);
    // Same function, different net outside [-1, 1]: the plateau is 1 on |x| <= 2.8.
    std::string gt = "(" + ft + ")*plateau(x1^2/16)";
    CompactlySupportedGsf f = supported(ft, 1, cfg), h = supported(gt, 1, cfg);
    auto agree = [&](const GeneralizedNumber& x) {
      GeneralizedNumber d = eval_scalar(f.gsf(), {x}, cfg) - eval_scalar(h.gsf(), {x}, cfg);
      return is_negligible(d, cfg.net.decide) == Tri::True;
    };
    bool on_samples = true;
    for (int t = 0; t < 5; ++t) on_samples = on_samples && agree(random_member(g, -1, 1, rng));
    for (const auto& s : f.exterior_samples()) on_samples = on_samples && agree(s.point[0]);
    if (!on_samples) {
      record(r, false, Json{{"f", ft}, {"reason", "disagree on K or exterior samples"}});
      continue;
    }
    // Global points, including ones that alternate between K and the exterior.
    IdempotentSet s = random_idempotent(rng);
    GeneralizedNumber mixed = interleave({random_member(g, -1, 1, rng), GeneralizedNumber(lattice(rng, 9, 40, 0.125))},
                                         {s, s.complement()}, g);
    bool ok = agree(mixed) && agree(random_member(g, -6, 6, rng)) && agree(GeneralizedNumber(1.0) + eps_pow(2));
    record(r, ok, Json{{"f", ft}, {"g", gt}});
  }
  return r;
}

PropertyResult check_norm_axioms(int count, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("norm_axioms");
  std::mt19937_64 rng(seed);
  const EpsilonGrid& grid = cfg.net.grid;
  const int top = 2;
  {
    auto zero = norm_table(supported("0", top, cfg), top, cfg);
    auto bump = norm_table(supported("bump(x1)", top, cfg), top, cfg);
    bool ok = true;
    for (int m = 0; m <= top; ++m)
      for (std::size_t i = 0; i < grid.size(); ++i) ok = ok && at(zero[m].value, grid, i) == 0.0 && at(bump[m].value, grid, i) > 0.0;
    record(r, ok, Json{{"kind", "definiteness"}});
  }
  double worst_triangle = 0, worst_homogeneity = 0, worst_product = 0;
  for (int t = 0; t < count; ++t) {
    std::string ft = random_bump_combination(rng, true), gt = random_bump_combination(rng, true);
    CompactlySupportedGsf f = supported(ft, top, cfg), g = supported(gt, top, cfg);
    double k = 0;
    while (k == 0) k = lattice(rng, -20, 20, 0.25);
    int a = pick(rng, -1, 1);
    GeneralizedNumber c = ExactNet::monomial(k, a);
    auto nf = norm_table(f, top, cfg), ng = norm_table(g, top, cfg);
    auto ns = norm_table(add(f, g, cfg), top, cfg);
    auto nc = norm_table(scale(c, f), top, cfg);
    auto np = norm_table(mul(f, g.gsf()), top, cfg);
    for (int m = 0; m <= top; ++m) {
      bool ok = true;
      std::string kind;
      std::size_t where = 0;
      for (std::size_t i = 0; i < grid.size() && ok; ++i) {
        double x = at(nf[m].value, grid, i), y = at(ng[m].value, grid, i);
        double sum = at(ns[m].value, grid, i), scaled = at(nc[m].value, grid, i), prod = at(np[m].value, grid, i);
        double cabs = std::fabs(k) * std::pow(grid.eps(i), a);
        double tri = (sum - (x + y)) / std::max(x + y, 1e-300);
        double hom = std::fabs(scaled - cabs * x) / std::max(cabs * x, 1e-300);
        double bound = std::ldexp(1.0, m) * x * y;
        double pro = (prod - bound) / std::max(bound, 1e-300);
        worst_triangle = std::max(worst_triangle, tri);
        worst_homogeneity = std::max(worst_homogeneity, hom);
        worst_product = std::max(worst_product, pro);
        if (sum > (x + y) * (1 + 1e-9)) kind = "triangle";
        else if (hom > 1e-6) kind = "homogeneity";
        else if (prod > bound * (1 + 1e-9)) kind = "product";
        ok = kind.empty();
        where = i;
      }
      record(r, ok, Json{{"f", ft}, {"g", gt}, {"c", to_string(c.exact())}, {"m", m}, {"kind", kind},
                         {"eps_index", where}});
    }
  }
  r.details = Json{{"triangle_slack", 1e-9},
                   {"homogeneity_tolerance", 1e-6},
                   {"product_constant", "2^m"},
                   {"worst_triangle_excess", worst_triangle},
                   {"worst_homogeneity_error", worst_homogeneity},
                   {"worst_product_excess", worst_product}};
  return r;
}

PropertyResult check_valuation_ultrapseudonorm(int count, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("valuation_ultrapseudonorm");
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    std::string ft = fmt(lattice(rng, 1, 8, 0.25)) + "*eps^" + fmt(pick(rng, -1, 3)) + "*(" +
                     random_bump_combination(rng, false) + ")";
    std::string gt = fmt(lattice(rng, -8, 8, 0.25)) + "*eps^" + fmt(pick(rng, -1, 3)) + "*(" +
                     random_bump_combination(rng, false) + ")";
    CompactlySupportedGsf f = supported(ft, 2, cfg), g = supported(gt, 2, cfg);
    CompactlySupportedGsf s = add(f, g, cfg);
    int m = pick(rng, 0, 2);
    double vf = v_m(f, m, cfg).value, vg = v_m(g, m, cfg).value, vs = v_m(s, m, cfg).value;
    double pf = p_m(f, m, cfg), pg = p_m(g, m, cfg), ps = p_m(s, m, cfg);
    bool ok = vs >= std::min(vf, vg) - 0.1 && ps <= std::max(pf, pg) * 1.1;
    record(r, ok, Json{{"f", ft}, {"g", gt}, {"m", m}, {"v_f", vf}, {"v_g", vg}, {"v_sum", vs}});
  }
  return r;
}

PropertyResult check_ball_convexity(int count, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("ball_convexity");
  std::mt19937_64 rng(seed);
  CompactlySupportedGsf zero = supported("0", 2, cfg);
  int premises = 0;
  for (int t = 0; t < count; ++t) {
    double q = lattice(rng, 0, 4, 0.5);
    int m = pick(rng, 0, 2);
    GeneralizedNumber rho = eps_pow(q);
    auto member = [&] {
      return fmt(lattice(rng, -4, 4, 0.125)) + "*eps^" + fmt(q + lattice(rng, 0, 2, 0.5)) + "*(" +
             random_bump_combination(rng, false) + ")";
    };
    std::string ft = member(), gt = member();
    CompactlySupportedGsf f = supported(ft, 2, cfg), g = supported(gt, 2, cfg);
    if (ball_member(f, zero, m, rho, cfg) != Tri::True || ball_member(g, zero, m, rho, cfg) != Tri::True) continue;
    ++premises;
    double s = lattice(rng, 0, 8, 0.125);
    CompactlySupportedGsf mix = add(scale(GeneralizedNumber(s), f), scale(GeneralizedNumber(1 - s), g), cfg);
    Tri in = ball_member(mix, zero, m, rho, cfg);
    record(r, in == Tri::True, Json{{"f", ft}, {"g", gt}, {"t", s}, {"m", m}, {"q", q}, {"member", to_string(in)}});
  }
  r.details = Json{{"configurations", count}, {"premise_held", premises}};
  return r;
}

PropertyResult check_k_independence(const GsfConfig& cfg) {
  PropertyResult r = named("K_independence");
  const EpsilonGrid& grid = cfg.net.grid;
  double worst = 0;
  for (const char* text : {"bump(x1)", "plateau(x1)*cos(3*x1)", "eps^-1*bump(x1/eps)"}) {
    auto nk = norm_table(supported(text, 3, cfg, 1.0), 3, cfg);
    auto nh = norm_table(supported(text, 3, cfg, 2.0), 3, cfg);
    for (int m = 0; m <= 3; ++m) {
      double rel = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        double a = at(nk[m].value, grid, i), b = at(nh[m].value, grid, i);
        rel = std::max(rel, std::fabs(a - b) / std::max(std::fabs(a), 1e-300));
      }
      worst = std::max(worst, rel);
      record(r, rel <= 1e-6, Json{{"f", text}, {"m", m}, {"relative_difference", rel}});
    }
  }
  r.details = Json{{"tolerance", 1e-6}, {"worst_relative_difference", worst}};
  return r;
}

PropertyResult check_delta_valuations(const GsfConfig& cfg) {
  PropertyResult r = named("delta_valuations");
  auto d = verify_compact_support(delta_embedding(1, 1.0), interval(-1.0, 1.0, cfg.net.decide), 4, cfg);
  if (!std::holds_alternative<CompactlySupportedGsf>(d)) {
    record(r, false, Json{{"reason", "delta support not verified"}});
    return r;
  }
  auto table = norm_table(std::get<CompactlySupportedGsf>(d), 4, cfg);
  Json rows = Json::array();
  for (int m = 0; m <= 4; ++m) {
    Valuation v = valuation(table[m].value, cfg.net.decide);
    rows.push_back(Json{{"m", m}, {"valuation", to_json(v)}, {"expected", -(m + 1)}});
    record(r, std::fabs(v.value + (m + 1)) <= 0.05, Json{{"m", m}, {"valuation", to_json(v)}});
  }
  r.details = Json{{"table", rows}};
  return r;
}

PropertyResult check_real_scaling(const GsfConfig& cfg) {
  PropertyResult r = named("real_scaling_stays_infinite");
  auto d = std::get<CompactlySupportedGsf>(
      verify_compact_support(delta_embedding(1, 1.0), interval(-1.0, 1.0, cfg.net.decide), 0, cfg));
  for (int e = -6; e <= 6; ++e)
    for (double sign : {1.0, -1.0}) {
      double lambda = sign * std::pow(10.0, e);
      double v = v_m(scale(GeneralizedNumber(lambda), d), 0, cfg).value;
      record(r, v <= -1 + 0.05, Json{{"lambda", lambda}, {"v0", v}});
    }
  return r;
}

PropertyResult check_ball_inclusions(int count, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("ball_inclusions");
  std::mt19937_64 rng(seed);
  int premise_a = 0, premise_b = 0;
  for (int t = 0; t < count; ++t) {
    std::string ft = random_bump_combination(rng, false), ht = random_bump_combination(rng, false);
    double c = 0;
    while (c == 0) c = lattice(rng, -8, 8, 0.25);
    double b = lattice(rng, -2, 6, 0.5);
    std::string gt = shifted(ft, c, b, ht);
    CompactlySupportedGsf f = supported(ft, 2, cfg), g = supported(gt, 2, cfg);
    int m = pick(rng, 0, 2);
    // Radii on lattices offset from the valuations so every comparison is strict.
    double log_r = 0.25 + lattice(rng, -4, 8, 0.5);  // -log r
    double qa = log_r - 0.25 - lattice(rng, 0, 2, 0.5);
    bool in_c = c_set_member(f, g, m, std::exp(-log_r), cfg);
    Tri in_b = Tri::Undecidable;
    if (in_c) {
      ++premise_a;
      in_b = ball_member(f, g, m, eps_pow(qa), cfg);
    }
    record(r, !in_c || in_b == Tri::True,
           Json{{"part", "C_r in B_q"}, {"f", ft}, {"g", gt}, {"m", m}, {"-log r", log_r}, {"q", qa},
                {"in_ball", to_string(in_b)}});
    double qb = lattice(rng, -2, 6, 0.5);
    double log_s = qb - 0.25 - lattice(rng, 0, 1, 0.5);
    double log_r2 = log_s - lattice(rng, 1, 2, 0.5);  // s < r
    Tri in_ball = ball_member(f, g, m, eps_pow(qb), cfg);
    bool in_c2 = false;
    if (in_ball == Tri::True) {
      ++premise_b;
      in_c2 = c_set_member(f, g, m, std::exp(-log_r2), cfg);
    }
    record(r, in_ball != Tri::True || in_c2,
           Json{{"part", "B_q in C_r"}, {"f", ft}, {"g", gt}, {"m", m}, {"q", qb}, {"-log s", log_s},
                {"-log r", log_r2}});
  }
  r.details = Json{{"configurations", count}, {"premise_a_held", premise_a}, {"premise_b_held", premise_b}};
  return r;
}

PropertyResult check_metric_bounds(int count, std::uint64_t seed, const GsfConfig& cfg) {
  PropertyResult r = named("metric_equivalence");
  std::mt19937_64 rng(seed);
  int upper_failures = 0, lower_failures = 0;
  for (int t = 0; t < count; ++t) {
    std::string ft = random_bump_combination(rng, false), ht = random_bump_combination(rng, false);
    double c = 0;
    while (c == 0) c = lattice(rng, -8, 8, 0.25);
    double b = lattice(rng, 0, 8, 0.5);
    std::string gt = shifted(ft, c, b, ht);
    MetricReport m = metric(supported(ft, 2, cfg), supported(gt, 2, cfg), 20, cfg);
    bool upper = m.d_e_lo <= m.d_2_hi + m.tail_2;
    bool lower = m.d_2_lo / 2 <= m.d_e_hi + m.tail_e;
    upper_failures += !upper;
    lower_failures += !lower;
    record(r, upper && lower,
           Json{{"f", ft}, {"g", gt}, {"d_e", m.d_e}, {"d_2", m.d_2}, {"upper", upper}, {"lower", lower}});
  }
  r.details = Json{{"upper_bound_failures", upper_failures}, {"lower_bound_failures", lower_failures}};
  return r;
}

PropertyResult check_metric_closed_form(const GsfConfig& cfg) {
  PropertyResult r = named("metric_closed_form");
  MetricReport m = metric(supported("bump(x1)", 2, cfg), supported("bump(x1) + eps^2*bump(x1)", 2, cfg), 20, cfg);
  double closed = 2 * std::exp(-2.0) + std::exp(-3.0) / (1 - std::exp(-1.0));
  double err = std::fabs(m.d_e - closed);
  record(r, err <= 1e-9 + m.tail_e, Json{{"d_e", m.d_e}, {"closed_form", closed}, {"tail", m.tail_e}});
  r.details = Json{{"d_e", m.d_e}, {"closed_form", closed}, {"error", err}, {"tail_e", m.tail_e}};
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ring",    "ultrametric", "order",    "sets",
                                                 "support", "norms",       "topology", "metric"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed, const GsfConfig& cfg) {
  if (name == "all") {
    std::vector<SuiteReport> all;
    for (const auto& n : suite_names()) all.push_back(run_suite(n, seed, cfg).front());
    return all;
  }
  SuiteReport rep;
  rep.suite = name;
  rep.seed = seed;
  auto& p = rep.properties;
  const NetConfig& net = cfg.net;
  if (name == "ring") {
    p.push_back(check_ring_axioms(300, seed));
  } else if (name == "ultrametric") {
    p.push_back(check_ultrametric(1000, seed, net.decide));
  } else if (name == "order") {
    p.push_back(check_positivity_coherence(500, seed, net.decide));
    p.push_back(check_valuation_bounds(300, seed + 1, net.decide));
    p.push_back(check_idempotents(net));
    p.push_back(check_sampled_exact_agreement(100, seed + 2, net));
  } else if (name == "sets") {
    p.push_back(check_exterior_idempotent(50, seed, net));
    p.push_back(check_representative_independence(20, seed + 1, net));
    p.push_back(check_interleaving_closure(50, seed + 2, net));
    p.push_back(check_interleaving_gap(net));
    p.push_back(check_exhaustion_monotone(50, seed + 3, net));
  } else if (name == "support") {
    p.push_back(check_extreme_sandwich(100, seed, cfg));
    p.push_back(check_image(25, seed + 1, cfg));
    p.push_back(check_support_equivalence(10, seed + 2, cfg));
    p.push_back(check_monotone_in_k(cfg));
    p.push_back(check_derivative_closure(cfg));
    p.push_back(check_extension_uniqueness(20, seed + 3, cfg));
  } else if (name == "norms") {
    p.push_back(check_norm_axioms(200, seed, cfg));
    p.push_back(check_valuation_ultrapseudonorm(50, seed + 1, cfg));
    p.push_back(check_ball_convexity(30, seed + 2, cfg));
    p.push_back(check_k_independence(cfg));
    p.push_back(check_delta_valuations(cfg));
    p.push_back(check_real_scaling(cfg));
  } else if (name == "topology") {
    p.push_back(check_ball_inclusions(100, seed, cfg));
  } else if (name == "metric") {
    p.push_back(check_metric_bounds(100, seed, cfg));
    p.push_back(check_metric_closed_form(cfg));
  } else {
    throw PreconditionError("unknown suite '" + name + "'");
  }
  return {rep};
}

}  // namespace cgsf
