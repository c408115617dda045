#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cgsf/errors.hpp"
#include "cgsf/idempotent.hpp"
#include "cgsf/sets.hpp"

using namespace cgsf;

namespace {

GeneralizedNumber X(const char* s) { return parse_exact_net(s); }

GeneralizedNumber exp_minus_inv_eps(const EpsilonGrid& g) {
  return SampledNet::from_generator(g, [](double le) { return LogReal(1, -std::exp(-le)); });
}

FunctionallyCompactSet I(const char* a, const char* b) { return interval(X(a), X(b)); }

StronglyInternalSet open_interval(const char* a, const char* b) {
  return StronglyInternalSet(BoxNet(1, {Box{{X(a)}, {X(b)}}}));
}

}  // namespace

TEST(Membership, InternalExamples) {
  EpsilonGrid g;
  auto k = I("-1", "1");
  EXPECT_EQ(member_internal({X("0")}, k), Tri::True);
  EXPECT_EQ(member_internal({GeneralizedNumber(1.0) + exp_minus_inv_eps(g)}, k), Tri::True);
  EXPECT_EQ(member_internal({X("2")}, k), Tri::False);
  EXPECT_EQ(member_internal({X("1 + eps^7")}, k), Tri::False);
}

TEST(Membership, ExteriorExamples) {
  EpsilonGrid g;
  auto k = I("-1", "1");
  EXPECT_EQ(member_exterior({X("2")}, k).decision, Tri::True);
  ExteriorResult r = member_exterior({X("1 + eps")}, k);
  EXPECT_EQ(r.decision, Tri::True);
  EXPECT_EQ(r.q, 2);
  EXPECT_EQ(member_exterior({GeneralizedNumber(1.0) + exp_minus_inv_eps(g)}, k).decision, Tri::False);
  // Sampled route agrees with the exact one.
  ExteriorResult rs = member_exterior({SampledNet::from_exact(g, parse_exact_net("1 + eps"))}, k);
  EXPECT_EQ(rs.decision, Tri::True);
  EXPECT_EQ(rs.q, 2);
}

TEST(FunctionalCompactness, Examples) {
  EXPECT_EQ(I("0", "1").sharp_bound(), 0);
  EXPECT_EQ(I("-eps^-3", "eps^-2").sharp_bound(), 3);
  EXPECT_EQ(I("-eps^-2", "eps^-3").sharp_bound(), 3);
  EXPECT_EQ(I("-2", "2").sharp_bound(), 1);
  InternalSet huge(BoxNet(1, {Box{{X("0")}, {X("eps^-20")}}}));
  EXPECT_FALSE(is_functionally_compact(huge).has_value());
  EXPECT_THROW(make_functionally_compact(huge), PreconditionError);
  EXPECT_THROW(interval(X("1"), X("0")), PreconditionError);
  EXPECT_THROW(BoxNet(1, {Box{{X("1")}, {X("0")}}}), PreconditionError);
}

TEST(SetAlgebra, UnionIntersectionProduct) {
  EpsilonGrid g;
  auto u = interleaving_union(I("0", "1"), I("0", "1"));
  EXPECT_EQ(member_internal({X("0.5")}, u), Tri::True);
  EXPECT_EQ(member_internal({X("1.5")}, u), Tri::False);

  auto k = I("-0.5", "0.5"), h = I("2.5", "3.5");
  auto kh = interleaving_union(k, h);
  auto s = IdempotentSet::dyadic_alternating(0);
  GenVec x = {interleave({0.0, 3.0}, {s, s.complement()}, g)};
  EXPECT_EQ(member_internal(x, kh), Tri::True);
  EXPECT_EQ(member_internal(x, k), Tri::False);
  EXPECT_EQ(member_internal(x, h), Tri::False);

  auto in = intersection(I("0", "2"), I("1", "3"));
  ASSERT_EQ(in.net().boxes().size(), 1u);
  EXPECT_EQ(in.net().boxes()[0].lo[0].exact(), parse_exact_net("1"));
  EXPECT_EQ(in.net().boxes()[0].hi[0].exact(), parse_exact_net("2"));
  EXPECT_TRUE(intersection(I("0", "1"), I("2", "3")).net().empty());

  auto rect = product(I("0", "1"), I("-eps^-1", "eps"));
  EXPECT_EQ(rect.dim(), 2u);
  EXPECT_EQ(rect.sharp_bound(), 1);
  EXPECT_EQ(member_internal({X("0.5"), X("-eps^-0.5")}, rect), Tri::True);
  EXPECT_EQ(member_internal({X("0.5"), X("2*eps")}, rect), Tri::False);
}

TEST(Hausdorff, PunchedSquareEqualsSquare) {
  EpsilonGrid g;
  GeneralizedNumber h = exp_minus_inv_eps(g);
  GeneralizedNumber one(1.0), m1(-1.0);
  BoxNet square(2, {Box{{m1, m1}, {one, one}}});
  BoxNet punched(2, {Box{{m1, h}, {one, one}}, Box{{m1, m1}, {one, -h}}, Box{{m1, -h}, {-h, h}},
                     Box{{h, -h}, {one, h}}});
  HausdorffResult r = hausdorff_equal(InternalSet(square), InternalSet(punched));
  EXPECT_EQ(r.equal, Tri::True);
  // Oracle: the farthest point of the square from the punched set is the hole centre.
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.distance.value_at(g, i), std::exp(-1.0 / g.eps(i)), 1e-18);
}

TEST(Hausdorff, OneDimensionalExamples) {
  EpsilonGrid g;
  auto r = hausdorff_equal(I("0", "1").internal(), I("0", "1 + eps").internal());
  EXPECT_EQ(r.equal, Tri::False);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(valuation(r.distance).value, 1.0, 0.05);
  EXPECT_EQ(hausdorff_equal(I("0", "1").internal(), I("0", "1").internal()).equal, Tri::True);
  // Two intervals with a gap against their hull: distance is half the gap.
  auto two = interleaving_union(I("0", "1"), I("3", "4"));
  auto r2 = hausdorff_equal(two.internal(), I("0", "4").internal());
  EXPECT_DOUBLE_EQ(r2.distance.value_at(g, 0), 1.0);
}

TEST(Hausdorff, RepresentativeIndependenceOfExterior) {
  EpsilonGrid g;
  GeneralizedNumber h = exp_minus_inv_eps(g);
  auto k = I("-1", "1");
  auto l = make_functionally_compact(InternalSet(BoxNet(1, {Box{{X("-1")}, {GeneralizedNumber(1.0) - h}}})));
  ASSERT_EQ(hausdorff_equal(k.internal(), l.internal()).equal, Tri::True);
  for (const char* p : {"2", "1 + eps", "1 + eps^3", "0", "-1 - eps^2", "1"}) {
    EXPECT_EQ(member_exterior({X(p)}, k).decision, member_exterior({X(p)}, l).decision) << p;
  }
}

TEST(StronglyInternal, MembershipAndWitness) {
  auto u = open_interval("-1", "1");
  Positivity p = member_strongly_internal({X("0")}, u);
  EXPECT_EQ(p.decision, Tri::True);
  EXPECT_EQ(member_strongly_internal({X("1 - eps^2")}, u).decision, Tri::True);
  EXPECT_EQ(member_strongly_internal({X("1")}, u).decision, Tri::False);
  EXPECT_EQ(moderateness_witness(u), 1);
  EXPECT_EQ(moderateness_witness(StronglyInternalSet::whole(2)), 0);
}

TEST(Exhaustion, ContractionAndMonotonicity) {
  auto u = open_interval("-1", "1");
  auto k1 = exhaustion(u, 1);
  ASSERT_EQ(k1.net().boxes().size(), 1u);
  EXPECT_EQ(k1.net().boxes()[0].lo[0].exact(), parse_exact_net("-1 + eps"));
  EXPECT_EQ(k1.net().boxes()[0].hi[0].exact(), parse_exact_net("1 - eps"));
  EXPECT_THROW(exhaustion(u, 0), PreconditionError);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> e(0, 12);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    GenVec x{GeneralizedNumber(ExactNet({{std::copysign(1.0, c(rng)), 0}, {c(rng), e(rng) / 2.0}}))};
    for (int j = 1; j < 8; ++j) {
      if (member_internal(x, exhaustion(u, j)) == Tri::True)
        EXPECT_EQ(member_internal(x, exhaustion(u, j + 1)), Tri::True);
    }
  }
}

TEST(Exhaustion, CoveringIndexExamples) {
  auto u = open_interval("-1", "1");
  CoveringIndex a = find_covering_index(I("-0.5", "0.5"), u);
  EXPECT_EQ(a.margin_index, 1);
  EXPECT_EQ(a.j, 1);
  auto kj = exhaustion(u, a.j);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-0.5, 0.5);
  for (int t = 0; t < 100; ++t) EXPECT_EQ(member_internal({GeneralizedNumber(c(rng))}, kj), Tri::True);

  CoveringIndex b = find_covering_index(I("-1 + eps^2", "1 - eps^2"), u);
  EXPECT_EQ(b.margin_index, 2);
  EXPECT_EQ(b.j, 2);
  EXPECT_EQ(member_internal({X("1 - eps^2")}, exhaustion(u, b.j)), Tri::True);

  CoveringIndex w = find_covering_index(I("0", "eps^-3"), StronglyInternalSet::whole(1));
  EXPECT_EQ(w.j, 3);
  EXPECT_EQ(member_internal({X("eps^-3")}, exhaustion(StronglyInternalSet::whole(1), w.j)), Tri::True);

  EXPECT_THROW(find_covering_index(I("0", "2"), u), ContainmentError);
}

TEST(Interleaving, ClosureForStronglyInternalAndGapForUnions) {
  EpsilonGrid g;
  auto s = IdempotentSet::dyadic_alternating(1);
  auto u = open_interval("-1", "4");
  GenVec x = {interleave({0.0, 3.0}, {s, s.complement()}, g)};
  EXPECT_EQ(member_strongly_internal(x, u).decision, Tri::True);

  SharpUnion gap{{open_interval("-1", "1"), open_interval("2", "4")}};
  EXPECT_EQ(member_sharp_union({X("0")}, gap), Tri::True);
  EXPECT_EQ(member_sharp_union({X("3")}, gap), Tri::True);
  EXPECT_EQ(member_sharp_union(x, gap), Tri::False);
}

TEST(Exterior, IdempotentCharacterisation) {
  EpsilonGrid g;
  auto k = I("-1", "1");
  GenVec member{X("0.25")};
  auto s = IdempotentSet::dyadic_alternating(0);
  // Exterior point: interleaving with a member never lands in K.
  for (const char* p : {"2", "1 + eps", "-1 - eps^3"}) {
    GenVec x{X(p)};
    ASSERT_EQ(member_exterior(x, k).decision, Tri::True);
    GenVec y = interleave(std::vector<GenVec>{x, member}, {s, s.complement()}, g);
    EXPECT_EQ(member_internal(y, k), Tri::False) << p;
  }
  // Non-exterior point built from a sequence approaching K: on S it touches K.
  GenVec z{interleave({X("1 + eps"), X("1")}, {s.complement(), s}, g)};
  EXPECT_NE(member_exterior(z, k).decision, Tri::True);
  GenVec w = interleave(std::vector<GenVec>{z, member}, {s, s.complement()}, g);
  EXPECT_EQ(member_internal(w, k), Tri::True);
}
