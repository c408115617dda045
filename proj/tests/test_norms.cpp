#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cgsf/errors.hpp"
#include "cgsf/norms.hpp"

using namespace cgsf;

namespace {

const EpsilonGrid kGrid;

CompactlySupportedGsf supported(const char* text, double r = 1.0, int order = 2) {
  auto v = verify_compact_support(Gsf::global(parse_expr(text), 1), interval(-r, r), order);
  EXPECT_TRUE(std::holds_alternative<CompactlySupportedGsf>(v)) << text;
  return std::get<CompactlySupportedGsf>(v);
}

// Oracle for sup |bump'|: bump'(t) = -2t/(1-t^2)^2 * exp(1 - 1/(1-t^2)), scanned
// densely and polished by golden-section search.
double bump_slope_sup() {
  auto f = [](double t) {
    double s = 1 - t * t;
    return std::fabs(-2 * t / (s * s) * std::exp(1 - 1 / s));
  };
  double best = 0, arg = 0;
  for (int i = 1; i < 100000; ++i) {
    double t = i / 100000.0;
    if (f(t) > best) best = f(t), arg = t;
  }
  double a = arg - 1e-5, b = arg + 1e-5;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int i = 0; i < 100; ++i) {
    double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) > f(d)) b = d; else a = c;
  }
  return f(0.5 * (a + b));
}

double at(const GeneralizedNumber& x, std::size_t i) { return x.value_at(kGrid, i); }

}  // namespace

TEST(Norms, BumpNorms) {
  CompactlySupportedGsf b = supported("bump(x1)");
  auto t = norm_table(b, 1);
  double slope = bump_slope_sup();
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    EXPECT_NEAR(at(t[0].value, i), 1.0, 1e-12);
    EXPECT_NEAR(at(t[1].value, i), std::max(1.0, slope), 1e-9);
  }
  Valuation v0 = v_m(b, 0);
  EXPECT_NEAR(v0.value, 0.0, 1e-9);
  EXPECT_NEAR(p_m(b, 0), 1.0, 1e-9);

  CompactlySupportedGsf zero = supported("0");
  for (std::size_t i = 0; i < kGrid.size(); ++i) EXPECT_EQ(at(norm_m(zero, 3).value, i), 0.0);
  EXPECT_EQ(p_m(zero, 2), 0.0);
  EXPECT_TRUE(v_m(zero, 2).negligible());
}

TEST(Norms, DeltaValuations) {
  auto d = verify_compact_support(delta_embedding(1, 1.0), interval(-1.0, 1.0), 2);
  ASSERT_TRUE(std::holds_alternative<CompactlySupportedGsf>(d));
  auto t = norm_table(std::get<CompactlySupportedGsf>(d), 4);
  for (int m = 0; m <= 4; ++m) EXPECT_NEAR(valuation(t[m].value).value, -(m + 1), 0.05) << m;
}

TEST(Norms, GlobalNormMatchesLocal) {
  for (const char* text : {"bump(x1)", "plateau(x1)*cos(3*x1)", "eps^-1*bump(x1/eps)"}) {
    CompactlySupportedGsf f = supported(text);
    for (int m = 0; m <= 3; ++m) {
      NormValue g = norm_m_global(f, m);
      NormValue l = norm_m(f, m);
      EXPECT_FALSE(g.support_mismatch) << text;
      for (std::size_t i = 0; i < kGrid.size(); ++i)
        EXPECT_NEAR(at(g.value, i), at(l.value, i), 1e-6 * at(l.value, i)) << text << " m=" << m;
    }
  }
  // The support witness is too small: the widened sup disagrees.
  auto wrong = CompactSupportAccess::make(Gsf::global(parse_expr("bump(x1/2)"), 1), interval(-1.0, 1.0), 0, {});
  EXPECT_TRUE(norm_m_global(wrong, 1).support_mismatch);
}

TEST(Norms, IndependentOfWitness) {
  CompactlySupportedGsf k = supported("bump(x1)", 1.0);
  CompactlySupportedGsf h = supported("bump(x1)", 2.0);
  auto a = norm_table(k, 3), b = norm_table(h, 3);
  for (int m = 0; m <= 3; ++m)
    for (std::size_t i = 0; i < kGrid.size(); ++i)
      EXPECT_NEAR(at(a[m].value, i), at(b[m].value, i), 1e-6 * at(a[m].value, i));
}

TEST(Norms, ValuationShiftsWithEpsPowers) {
  CompactlySupportedGsf f = supported("bump(x1)*(1 + x1)");
  for (double a : {-2.0, 0.5, 3.0}) {
    CompactlySupportedGsf g = scale(eps_pow(a), f);
    for (int m : {0, 2}) EXPECT_NEAR(v_m(g, m).value, a + v_m(f, m).value, 1e-6);
  }
}

TEST(Norms, MembershipExamples) {
  CompactlySupportedGsf f = supported("bump(x1)");
  EXPECT_EQ(ball_member(f, f, 2, eps_pow(3)), Tri::True);
  EXPECT_TRUE(c_set_member(f, f, 2, 0.1));
  EXPECT_EQ(u_set_member(f, f, 2, eps_pow(3)), Tri::True);

  CompactlySupportedGsf g = supported("bump(x1) + eps^3*bump(x1)");
  EXPECT_EQ(u_set_member(f, g, 1, eps_pow(1)), Tri::True);
  EXPECT_EQ(u_set_member(f, g, 1, eps_pow(4)), Tri::False);
  EXPECT_EQ(ball_member(f, g, 1, eps_pow(2)), Tri::True);
  EXPECT_EQ(ball_member(f, g, 1, eps_pow(4)), Tri::False);
  EXPECT_THROW(ball_member(f, g, 1, GeneralizedNumber(0.0)), PreconditionError);
}

TEST(Norms, MetricExamples) {
  CompactlySupportedGsf f = supported("bump(x1)");
  MetricReport same = metric(f, f);
  EXPECT_EQ(same.d_e, 0.0);
  EXPECT_EQ(same.d_2, 0.0);

  CompactlySupportedGsf g = supported("bump(x1) + eps^2*bump(x1)");
  MetricReport r = metric(f, g, 20);
  // v_n = 2 for every n: terms e^{-1}e^{-1}, e^{-2}, then e^{-n}.
  double closed = 2 * std::exp(-2.0) + std::exp(-3.0) / (1 - std::exp(-1.0));
  EXPECT_NEAR(r.d_e, closed, 1e-9 + r.tail_e);
  for (const auto& v : r.v) EXPECT_NEAR(v.value, 2.0, 1e-6);

  MetricReport back = metric(g, f, 20);
  EXPECT_EQ(back.d_e, r.d_e);
  EXPECT_EQ(back.d_2, r.d_2);
  EXPECT_TRUE(r.upper_bound_holds);
}

TEST(Norms, MetricBoundsFromValuations) {
  // d_e <= d_2 always holds termwise.
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    std::vector<Valuation> v(20);
    for (auto& x : v) x.value = std::uniform_real_distribution<double>(-3, 25)(rng);
    MetricReport r = metric_from_valuations(v);
    EXPECT_LE(r.d_e, r.d_2);
    EXPECT_TRUE(r.upper_bound_holds);
  }
  // Constant v_n = 3 makes d_e fall below d_2 / 2 because e^-n < 2^-(n+1) for n >= 3.
  std::vector<Valuation> three(20);
  for (auto& x : three) x.value = 3.0;
  MetricReport r = metric_from_valuations(three);
  EXPECT_LT(r.d_e, r.d_2 / 2);
  EXPECT_FALSE(r.lower_bound_holds);
  // Unreliable terms widen the bracket.
  three[4].reliable = false;
  MetricReport w = metric_from_valuations(three);
  EXPECT_GT(w.d_e_hi, w.d_e_lo);
}

TEST(Norms, AbsorbentWitnessExamples) {
  auto d = verify_compact_support(delta_embedding(1, 1.0), interval(-1.0, 1.0), 1);
  AbsorbentWitness wd = absorbent_witness(std::get<CompactlySupportedGsf>(d), GeneralizedNumber(1.0), 0);
  EXPECT_EQ(wd.b, -2.0);
  EXPECT_EQ(wd.verified, Tri::True);

  AbsorbentWitness wz = absorbent_witness(supported("0"), GeneralizedNumber(1.0), 0);
  EXPECT_EQ(wz.verified, Tri::True);

  AbsorbentWitness wb = absorbent_witness(supported("bump(x1)"), eps_pow(1), 0);
  EXPECT_EQ(wb.b, -2.0);
  EXPECT_EQ(wb.verified, Tri::True);
}

TEST(Norms, CauchyLimitOfGeometricSequence) {
  std::vector<CompactlySupportedGsf> seq;
  std::string text = "bump(x1)";
  for (int n = 0; n <= 16; ++n) {
    if (n > 0) text += " + eps^" + std::to_string(n) + "*bump(x1)";
    seq.push_back(supported(text.c_str(), 1.0, 1));
  }
  // Consecutive terms differ by eps^(n+1) bump, whose k-th norm constant
  // outgrows the grid for k >= 6, so the proof's subsequence is needed.
  std::vector<int> identity(seq.size());
  for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = static_cast<int>(k);
  EXPECT_THROW(cauchy_limit(seq, identity, 8), NotCauchyError);
  std::vector<int> schedule = extract_schedule(seq);
  ASSERT_GE(schedule.size(), 9u);
  CauchyLimit lim = cauchy_limit(seq, schedule, 8);
  EXPECT_TRUE(lim.certified);
  EXPECT_EQ(lim.certificate.size(), 44u);  // p = 1..8, i = 0..p
  for (std::size_t k = 1; k < lim.steps.size(); ++k) EXPECT_LE(lim.steps[k].cutoff, lim.steps[k - 1].cutoff);
  EXPECT_TRUE(has_eps_cut(lim.limit.gsf().component()));
  // Away from the cutoffs the rewritten difference agrees with the plain one.
  CompactlySupportedGsf plain = sub(lim.limit, seq[3]), rewritten = limit_difference(lim, seq, 3);
  for (double t : {-0.5, 0.0, 0.7})
    for (std::size_t i : {0u, 5u, 10u})
      EXPECT_NEAR(at(eval_scalar(plain.gsf(), {GeneralizedNumber(t)}), i),
                  at(eval_scalar(rewritten.gsf(), {GeneralizedNumber(t)}), i), 1e-12);
  // The limit is also within eps^(n-1) of u_n itself in the n-th norm.
  for (int n = 1; n <= 8; ++n) {
    NormValue d = norm_m(limit_difference(lim, seq, n), n);
    EXPECT_EQ(strictly_positive(eps_pow(n - 1) - d.value).decision, Tri::True) << n;
  }
}

TEST(Norms, CauchyLimitEdgeCases) {
  CompactlySupportedGsf c = supported("bump(x1)");
  CauchyLimit lim = cauchy_limit({c, c, c}, {0, 1, 2}, 2);
  EXPECT_EQ(lim.limit.gsf().component().key(), c.gsf().component().key());
  EXPECT_TRUE(lim.certified);

  CompactlySupportedGsf jump = supported("2*bump(x1)");
  EXPECT_THROW(cauchy_limit({c, jump}, {0, 1}, 1), NotCauchyError);
}

TEST(Norms, AxiomsOnSmallSample) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> pick(0, 4);
  const char* shapes[] = {"bump(x1)", "bump(2*x1)", "bump(x1/eps^0)*x1", "plateau(x1)*sin(2*x1)", "bump(x1/eps)"};
  for (int t = 0; t < 8; ++t) {
    CompactlySupportedGsf f = supported(shapes[pick(rng)]);
    CompactlySupportedGsf g = supported(shapes[pick(rng)]);
    for (int m : {0, 2}) {
      auto nf = norm_m(f, m), ng = norm_m(g, m), ns = norm_m(add(f, g), m);
      auto nc = norm_m(scale(GeneralizedNumber(-3.5), f), m);
      auto np = norm_m(mul(f, g.gsf()), m);
      for (std::size_t i = 0; i < kGrid.size(); ++i) {
        double a = at(nf.value, i), b = at(ng.value, i);
        EXPECT_LE(at(ns.value, i), (a + b) * (1 + 1e-9));
        EXPECT_NEAR(at(nc.value, i), 3.5 * a, 1e-6 * 3.5 * a);
        EXPECT_LE(at(np.value, i), std::ldexp(1.0, m) * a * b * (1 + 1e-9));
      }
    }
  }
}

TEST(Norms, RealScalingNeverShrinksDelta) {
  auto d = std::get<CompactlySupportedGsf>(verify_compact_support(delta_embedding(1, 1.0), interval(-1.0, 1.0), 0));
  for (int e = -6; e <= 6; ++e)
    for (double s : {1.0, -1.0}) {
      double lambda = s * std::pow(10.0, e);
      EXPECT_LE(v_m(scale(GeneralizedNumber(lambda), d), 0).value, -1 + 0.05);
    }
}
