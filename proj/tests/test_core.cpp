#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cgsf/errors.hpp"
#include "cgsf/idempotent.hpp"
#include "cgsf/number.hpp"

using namespace cgsf;

namespace {

ExactNet X(const char* s) { return parse_exact_net(s); }

ExactNet random_exact(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 4), coeff(-5, 5), half_expo(-6, 8);
  std::vector<AsymptoticTerm> t;
  int n = count(rng);
  for (int i = 0; i < n; ++i) t.push_back({static_cast<double>(coeff(rng)), half_expo(rng) / 2.0});
  return ExactNet(t);
}

}  // namespace

TEST(LogReal, SumOfNearlyCancellingValuesKeepsPrecision) {
  LogReal one(1, 0.0);
  LogReal x = one + LogReal(1, -100.0);
  LogReal d = x - one;
  EXPECT_NEAR(d.log_magnitude(), -100.0, 1e-9);
  EXPECT_EQ((one - one).sign(), 0);
  EXPECT_THROW(LogReal(1, 800.0) * LogReal(1, 1.0), MagnitudeOverflow);
  EXPECT_EQ(compare(LogReal::from_double(-2.0), LogReal::from_double(-3.0)), 1);
}

TEST(EpsilonGrid, DefaultsAndValidation) {
  EpsilonGrid g;
  EXPECT_EQ(g.size(), 45u);
  EXPECT_DOUBLE_EQ(g.eps(0), 1.0 / 16.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g.eps(i), g.eps(i - 1));
  EXPECT_THROW(EpsilonGrid(2.0, 4, 8), PreconditionError);
  EXPECT_THROW(EpsilonGrid(1.0, 4, 48), PreconditionError);
}

TEST(ExactNet, AdditionExamples) {
  EXPECT_TRUE((X("eps^2") + X("-eps^2")).is_zero());
  ExactNet s = X("3*eps^-1") + X("5*eps^2");
  ASSERT_EQ(s.terms().size(), 2u);
  EXPECT_EQ(s.terms()[0], (AsymptoticTerm{3, -1}));
  EXPECT_EQ(s.terms()[1], (AsymptoticTerm{5, 2}));
}

TEST(ExactNet, MultiplicationExamples) {
  EXPECT_EQ(X("2*eps") * X("3*eps^2"), ExactNet::monomial(6, 3));
  EXPECT_TRUE((X("7*eps^-3+eps") * ExactNet()).is_zero());
  // Expanded by hand: (1/eps + 1)^2 = eps^-2 + 2 eps^-1 + 1.
  ExactNet sq = X("(eps^-1 + 1)^2");
  EXPECT_EQ(sq, ExactNet({{1, -2}, {2, -1}, {1, 0}}));
}

TEST(ExactNet, ParserRoundTripAndErrors) {
  ExactNet x = X("3*eps^-1 + 5*eps^2 - eps^(0.5)");
  EXPECT_EQ(parse_exact_net(to_string(x)), x);
  EXPECT_EQ(X("eps/2"), ExactNet::monomial(0.5, 1));
  EXPECT_EQ(X("1e-3*eps"), ExactNet::monomial(1e-3, 1));
  try {
    parse_exact_net("3*eps^ * 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(parse_exact_net("1/(1+eps)"), ParseError);
}

TEST(ExactNet, RingAxiomsAgreeWithPointEvaluation) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    ExactNet a = random_exact(rng), b = random_exact(rng), c = random_exact(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    ExactNet lhs = a * (b + c), rhs = a * b + a * c;
    // Oracle: compare values at a fixed epsilon where all terms are O(1).
    EXPECT_NEAR(lhs.eval(0.5), rhs.eval(0.5), 1e-9 * (1 + std::fabs(rhs.eval(0.5))));
    EXPECT_EQ(lhs, rhs);
    double va = a.leading_exponent(), vb = b.leading_exponent();
    if (!a.is_zero() && !b.is_zero()) EXPECT_EQ((a * b).leading_exponent(), va + vb);
    else EXPECT_TRUE((a * b).is_zero());
    EXPECT_GE((a + b).leading_exponent(), std::min(va, vb));
  }
}

TEST(Valuation, ExactAndSampledExamples) {
  EpsilonGrid g;
  EXPECT_EQ(valuation(X("eps^2")).value, 2);
  EXPECT_TRUE(valuation(ExactNet()).negligible());
  auto tiny = SampledNet::from_generator(g, [](double le) { return LogReal(1, -std::exp(-le)); });
  EXPECT_TRUE(valuation(tiny).negligible());
  EXPECT_EQ(is_negligible(tiny), Tri::True);
  EXPECT_NEAR(e_norm(X("eps")), std::exp(-1.0), 1e-15);
  EXPECT_EQ(sharp_distance(X("2+eps"), X("2+eps")), 0.0);
  EXPECT_NEAR(sharp_distance(X("1"), X("1+eps^3")), std::exp(-3.0), 1e-15);
}

TEST(Valuation, SampledAgreesWithLeadingExponent) {
  EpsilonGrid g;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    ExactNet a = random_exact(rng);
    if (a.is_zero()) continue;
    Valuation v = valuation(SampledNet::from_exact(g, a));
    EXPECT_NEAR(v.value, a.leading_exponent(), 0.05) << to_string(a);
  }
}

TEST(Valuation, InterleavedPowersAreFlaggedUnreliable) {
  EpsilonGrid g;
  auto s = IdempotentSet::dyadic_alternating(0);
  GeneralizedNumber x = interleave({X("eps"), X("eps^3")}, {s, s.complement()}, g);
  EXPECT_FALSE(valuation(x).reliable);
}

TEST(Positivity, Examples) {
  EpsilonGrid g;
  Positivity p = strictly_positive(X("eps^3"));
  EXPECT_EQ(p.decision, Tri::True);
  EXPECT_EQ(p.witness, 4);
  EXPECT_EQ(strictly_positive(X("-eps+eps^2")).decision, Tri::False);
  auto tiny = SampledNet::from_generator(g, [](double le) { return LogReal(1, -std::exp(-le)); });
  EXPECT_NE(strictly_positive(tiny).decision, Tri::True);
  EXPECT_NE(is_invertible(tiny), Tri::True);
  // Sampled copy of an exact number decides the same way.
  Positivity ps = strictly_positive(SampledNet::from_exact(g, X("eps^3 - eps^5")));
  EXPECT_EQ(ps.decision, Tri::True);
  EXPECT_EQ(ps.witness, 4);
}

TEST(Order, Examples) {
  EpsilonGrid g;
  EXPECT_EQ(leq(X("eps^2"), X("eps")), Tri::True);
  EXPECT_EQ(leq(X("eps"), X("eps^2")), Tri::False);
  GeneralizedNumber es = idempotent(IdempotentSet::dyadic_alternating(1), g);
  EXPECT_EQ(leq(es, 1.0), Tri::True);
  EXPECT_EQ(leq(1.0, es), Tri::False);
  GeneralizedNumber x = X("4 - eps");
  EXPECT_EQ(leq(x, x), Tri::True);
  EXPECT_EQ(leq(es, es), Tri::True);
}

TEST(Order, PositivityCoherenceOnRandomExactNumbers) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    ExactNet x = random_exact(rng);
    Positivity p = strictly_positive(x);
    bool positive_lead = !x.is_zero() && x.leading_coeff() > 0;
    EXPECT_EQ(p.decision == Tri::True, positive_lead);
    if (p.decision == Tri::True) {
      EXPECT_EQ(leq(eps_pow(*p.witness), x), Tri::True);
      EXPECT_EQ(is_invertible(x), Tri::True);
      EXPECT_EQ(leq(0.0, x), Tri::True);
    } else {
      for (int m = -6; m <= 12; ++m) EXPECT_EQ(leq(eps_pow(m), x), Tri::False);
    }
  }
}

TEST(Predicates, InfinitesimalAndInvertible) {
  EpsilonGrid g;
  EXPECT_EQ(is_negligible(ExactNet()), Tri::True);
  GeneralizedNumber r = X("eps^0.5");
  EXPECT_EQ(is_infinitesimal(r), Tri::True);
  EXPECT_EQ(is_invertible(r), Tri::True);
  EXPECT_EQ(is_negligible(r), Tri::False);
  EXPECT_EQ(is_infinitesimal(SampledNet::from_exact(g, X("eps^0.5"))), Tri::True);
  EXPECT_EQ(is_infinitesimal(SampledNet::from_exact(g, X("3 + eps"))), Tri::False);
  EXPECT_EQ(is_infinitesimal(SampledNet::from_exact(g, X("eps^-1"))), Tri::False);
}

TEST(Mixed, SampledPlusExact) {
  EpsilonGrid g;
  auto tiny = SampledNet::from_generator(g, [](double le) { return LogReal(1, -std::exp(-le)); });
  GeneralizedNumber s = GeneralizedNumber(tiny) + GeneralizedNumber(1.0);
  ASSERT_FALSE(s.is_exact());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double e = g.eps(i);
    EXPECT_NEAR(s.value_at(g, i), 1.0 + std::exp(-1.0 / e), 1e-15);
  }
}

TEST(Idempotent, Invariants) {
  EpsilonGrid g;
  for (auto s : {IdempotentSet::dyadic_alternating(0), IdempotentSet::intervals({{0.0, 0.001}}),
                 IdempotentSet::finite({1.0 / 16, 1.0 / 64}), IdempotentSet::harmonic_alternating(1)}) {
    GeneralizedNumber e = idempotent(s, g);
    GeneralizedNumber ec = idempotent(s.complement(), g);
    GeneralizedNumber sq = e * e;
    GeneralizedNumber one = e + ec;
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_EQ(sq.value_at(g, i), e.value_at(g, i));
      EXPECT_EQ(one.value_at(g, i), 1.0);
    }
  }
  EXPECT_TRUE(IdempotentSet::dyadic_alternating(0).zero_in_closure());
  EXPECT_FALSE(IdempotentSet::finite({0.5}).zero_in_closure());
  EXPECT_TRUE(IdempotentSet::finite({0.5}).complement().zero_in_closure());
  EXPECT_FALSE(IdempotentSet::intervals({{0.5, 1.0}}).zero_in_closure());
  // e_S != 0 iff 0 is in the closure of S, checked against the tail of the grid.
  EXPECT_EQ(is_negligible(idempotent(IdempotentSet::finite({0.5}), g)), Tri::True);
  EXPECT_EQ(is_negligible(idempotent(IdempotentSet::dyadic_alternating(1), g)), Tri::False);
}

TEST(Interleave, TrivialPartitionAndPartitionErrors) {
  EpsilonGrid g;
  GeneralizedNumber x = X("2 + eps");
  GeneralizedNumber y = interleave({x}, {IdempotentSet::full()}, g);
  EXPECT_TRUE(y.is_exact());
  auto s = IdempotentSet::dyadic_alternating(0);
  EXPECT_THROW(interleave({x, x}, {s, s}, g), PartitionError);
  GeneralizedNumber z = interleave({0.0, 3.0}, {s, s.complement()}, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_NEAR(z.value_at(g, i), s.contains(g.eps(i)) ? 0.0 : 3.0, 1e-15);
}

TEST(Ball, PointMembership) {
  GenVec x{X("1"), X("eps")};
  EXPECT_EQ(ball_member_point(x, x, X("eps^4")), Tri::True);
  GenVec y1{X("1 + eps"), X("eps")};
  EXPECT_EQ(ball_member_point(y1, x, X("eps^2")), Tri::False);
  GenVec y2{X("1 + eps^2"), X("eps")};
  EXPECT_EQ(ball_member_point(y2, x, X("eps")), Tri::True);
  EXPECT_THROW(ball_member_point(y2, x, X("-1")), PreconditionError);
}
