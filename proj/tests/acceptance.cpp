// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cgsf/verify.hpp"

using namespace cgsf;

namespace {

constexpr std::uint64_t kSeed = 7;

// Tolerances pinned by the criteria.
constexpr double kDeltaValuationTol = 0.05;
constexpr double kDeltaNormRelTol = 1e-6;
constexpr double kExtremeTol = 1e-6;
constexpr double kScalingBound = -1 + 0.05;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string summary(const PropertyResult& p) {
  std::string s = p.name + ": " + std::to_string(p.cases) + " cases, " + std::to_string(p.failures) + " failures";
  if (!p.details.empty()) s += " " + p.details.dump();
  if (!p.passed() && !p.counterexample.is_null()) s += " first counterexample " + p.counterexample.dump();
  return s;
}

Outcome from_properties(const std::vector<PropertyResult>& ps) {
  Outcome o{true, ""};
  for (const auto& p : ps) {
    o.pass = o.pass && p.passed();
    o.detail += (o.detail.empty() ? "" : "; ") + summary(p);
  }
  return o;
}

// Truncated Taylor series in one variable, independent of the library jets.
constexpr int kTerms = 6;
struct Series {
  std::array<double, kTerms> c{};
};

Series operator+(Series a, const Series& b) {
  for (int i = 0; i < kTerms; ++i) a.c[i] += b.c[i];
  return a;
}
Series operator-(Series a, const Series& b) {
  for (int i = 0; i < kTerms; ++i) a.c[i] -= b.c[i];
  return a;
}
Series operator*(const Series& a, const Series& b) {
  Series r;
  for (int i = 0; i < kTerms; ++i)
    for (int j = 0; i + j < kTerms; ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}
Series operator/(const Series& a, const Series& b) {
  Series q;
  for (int i = 0; i < kTerms; ++i) {
    double s = a.c[i];
    for (int j = 1; j <= i; ++j) s -= b.c[j] * q.c[i - j];
    q.c[i] = s / b.c[0];
  }
  return q;
}
Series constant(double v) {
  Series s;
  s.c[0] = v;
  return s;
}
Series exp(const Series& a) {
  // e' = a' e, coefficientwise.
  Series e;
  e.c[0] = std::exp(a.c[0]);
  for (int n = 1; n < kTerms; ++n) {
    double s = 0;
    for (int k = 1; k <= n; ++k) s += k * a.c[k] * e.c[n - k];
    e.c[n] = s / n;
  }
  return e;
}

// The delta profile rho(y) = plateau(y^2 / 4) = step(2 - y^2 / 2), with
// step(s) = 1 / (1 + exp(1/s - 1/(1 - s))) on (0, 1). Returns |rho^(k)(y)|
// for k < kTerms; only called where 0 < s < 1.
std::array<double, kTerms> profile_derivatives(double y) {
  Series t;
  t.c[0] = y;
  t.c[1] = 1;
  Series s = constant(2) - t * t / constant(2);
  Series d = constant(1) / s - constant(1) / (constant(1) - s);
  // Logistic in the form that does not overflow for either sign of d.
  Series rho = d.c[0] > 0 ? exp(constant(0) - d) / (constant(1) + exp(constant(0) - d))
                          : constant(1) / (constant(1) + exp(d));
  std::array<double, kTerms> out{};
  double fact = 1;
  for (int k = 0; k < kTerms; ++k) {
    if (k > 0) fact *= k;
    out[k] = std::fabs(rho.c[k] * fact);
  }
  return out;
}

// sup |rho^(k)| over R for k <= 4: rho is even, flat on |y| <= sqrt 2 and
// zero for |y| >= 2, so the transition (sqrt 2, 2) is scanned and each peak
// rescanned twice on finer grids.
std::array<double, kTerms> profile_sups() {
  const double lo = std::sqrt(2.0), hi = 2.0;
  std::array<double, kTerms> sup{}, at{};
  sup[0] = 1.0;
  at[0] = 0.0;
  auto sweep = [&](double a, double b, int n) {
    for (int i = 0; i <= n; ++i) {
      double y = std::clamp(a + (b - a) * i / n, lo, hi);
      if (y <= lo || y >= hi) continue;
      auto d = profile_derivatives(y);
      for (int k = 1; k < kTerms; ++k)
        if (d[k] > sup[k]) {
          sup[k] = d[k];
          at[k] = y;
        }
    }
  };
  const int n = 200000;
  sweep(lo, hi, n);
  double h = (hi - lo) / n;
  for (int pass = 0; pass < 2; ++pass, h /= 1000) {
    auto centre = at;
    for (int k = 1; k < kTerms; ++k) sweep(centre[k] - h, centre[k] + h, 2000);
  }
  return sup;
}

Outcome delta_valuations(const GsfConfig& cfg) {
  const EpsilonGrid& g = cfg.net.grid;
  auto v = verify_compact_support(delta_embedding(1, 1.0), interval(-1.0, 1.0, cfg.net.decide), 4, cfg);
  if (!std::holds_alternative<CompactlySupportedGsf>(v)) return {false, "delta support not verified"};
  auto table = norm_table(std::get<CompactlySupportedGsf>(v), 4, cfg);
  auto sups = profile_sups();
  Outcome o{true, ""};
  for (int m = 0; m <= 4; ++m) {
    double worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      // ||delta||_m = max_{k <= m} eps^(-1-k) sup |rho^(k)|, in logs to avoid overflow.
      double log_oracle = -std::numeric_limits<double>::infinity();
      for (int k = 0; k <= m; ++k) log_oracle = std::max(log_oracle, std::log(sups[k]) - (1 + k) * g.log_eps(i));
      double log_got = table[m].value.log_value_at(g, i).log_magnitude();
      worst = std::max(worst, std::fabs(std::expm1(log_got - log_oracle)));
    }
    double val = valuation(table[m].value, cfg.net.decide).value;
    bool ok = worst <= kDeltaNormRelTol && std::fabs(val + (m + 1)) <= kDeltaValuationTol;
    o.pass = o.pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sm=%d v=%.4f oracle_rel_err=%.2e", o.detail.empty() ? "" : "; ", m, val, worst);
    o.detail += buf;
  }
  return o;
}

Outcome extreme_values_criterion(const GsfConfig& cfg) {
  const EpsilonGrid& g = cfg.net.grid;
  ExtremeValues e =
      extreme_values(Gsf::global(parse_expr("x1*(1-x1)"), 1), interval(0.0, 1.0, cfg.net.decide), cfg);
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::fabs(e.max.value_at(g, i) - 0.25));
  PropertyResult sandwich = check_extreme_sandwich(100, kSeed, cfg);
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |M_eps - 1/4| = %.2e; ", worst);
  return {worst <= kExtremeTol && sandwich.passed(), buf + summary(sandwich)};
}

Outcome demos(const std::vector<std::string>& names, const GsfConfig& cfg) {
  Outcome o{true, ""};
  for (const auto& n : names) {
    DemoReport d = run_demo(n, cfg);
    o.pass = o.pass && d.passed;
    std::string failed;
    for (const auto& c : d.report["report"]["claims"])
      if (!c["holds"].get<bool>()) failed += " [" + c["claim"].get<std::string>() + "]";
    o.detail += (o.detail.empty() ? "" : "; ") + n + (d.passed ? " passed" : " failed:" + failed);
  }
  return o;
}

Outcome real_scaling(const GsfConfig& cfg) {
  PropertyResult p = check_real_scaling(cfg);
  return {p.passed(), summary(p) + ", bound v0 <= " + std::to_string(kScalingBound)};
}

}  // namespace

int main() {
  GsfConfig cfg;
  cfg.opt.seed = kSeed;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"ultrametric", [&] { return from_properties({check_ultrametric(1000, kSeed, cfg.net.decide)}); }},
      {"positivity-coherence", [&] { return from_properties({check_positivity_coherence(500, kSeed, cfg.net.decide)}); }},
      {"norm-axioms", [&] { return from_properties({check_norm_axioms(200, kSeed, cfg)}); }},
      {"k-independence", [&] { return from_properties({check_k_independence(cfg)}); }},
      {"delta-valuations", [&] { return delta_valuations(cfg); }},
      {"extreme-values", [&] { return extreme_values_criterion(cfg); }},
      {"metric-equivalence",
       [&] { return from_properties({check_metric_bounds(100, kSeed, cfg), check_metric_closed_form(cfg)}); }},
      {"ball-inclusions", [&] { return from_properties({check_ball_inclusions(100, kSeed, cfg)}); }},
      {"interleaving-and-hausdorff-demos", [&] { return demos({"interleaving-gap", "hausdorff-equal"}, cfg); }},
      {"completeness", [&] { return demos({"completeness"}, cfg); }},
      {"exterior-idempotent", [&] { return from_properties({check_exterior_idempotent(50, kSeed, cfg.net)}); }},
      {"impossibility-shadow", [&] { return real_scaling(cfg); }},
  };
  int failed = 0;
  auto start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %-34s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              total);
  return failed == 0 ? 0 : 1;
}
