#include <gtest/gtest.h>

#include "cgsf/errors.hpp"
#include "cgsf/json_io.hpp"

using namespace cgsf;

TEST(JsonIo, ExactNumberRoundTrip) {
  GeneralizedNumber x = parse_exact_net("3*eps^-1.5 - 0.25*eps^2");
  Json j = to_json(x);
  EXPECT_EQ(j["variant"], "exact");
  EXPECT_EQ(j["terms"].size(), 2u);
  GeneralizedNumber back = number_from_json(j);
  ASSERT_TRUE(back.is_exact());
  EXPECT_EQ(back.exact(), x.exact());
  EXPECT_EQ(number_from_json(Json("3*eps^-1.5 - 0.25*eps^2")).exact(), x.exact());
  EXPECT_EQ(number_from_json(Json(2.5)).exact(), parse_exact_net("2.5"));
}

TEST(JsonIo, SampledNumberRoundTrip) {
  EpsilonGrid g(2.0, 4, 12);
  GeneralizedNumber x = SampledNet::from_generator(g, [](double le) { return LogReal(-1, 2 * le); });
  Json j = to_json(x);
  EXPECT_EQ(j["variant"], "sampled");
  EXPECT_EQ(j["samples"].size(), g.size());
  GeneralizedNumber back = number_from_json(j);
  ASSERT_FALSE(back.is_exact());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(back.value_at(g, i), x.value_at(g, i));
  // Zero samples carry a null log magnitude.
  GeneralizedNumber zero = SampledNet::from_generator(g, [](double) { return LogReal(); });
  EXPECT_TRUE(to_json(zero)["samples"][0][1].is_null());
  EXPECT_EQ(number_from_json(to_json(zero)).value_at(g, 0), 0.0);
}

TEST(JsonIo, GridRoundTrip) {
  EpsilonGrid g(3.0, 2, 20);
  EpsilonGrid back = grid_from_json(to_json(g));
  EXPECT_EQ(back.size(), g.size());
  EXPECT_DOUBLE_EQ(back.eps(5), g.eps(5));
}

TEST(JsonIo, BoxNetForms) {
  BoxNet one = parse_box_net("[[-1, 1]]");
  ASSERT_EQ(one.boxes().size(), 1u);
  EXPECT_EQ(one.dim(), 1u);
  BoxNet two = parse_box_net(R"([[["-1", "0"], [0, "eps"]], [[2, 3], [0, 1]]])");
  ASSERT_EQ(two.boxes().size(), 2u);
  EXPECT_EQ(two.dim(), 2u);
  BoxNet back = box_net_from_json(to_json(two));
  ASSERT_EQ(back.boxes().size(), 2u);
  EXPECT_EQ(back.boxes()[0].hi[1].exact(), parse_exact_net("eps"));
}

TEST(JsonIo, BoxNetParseErrorsCarryPosition) {
  try {
    parse_box_net("[[-1, 1]");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
  EXPECT_THROW(parse_box_net("[[\"1 +\", 2]]"), ParseError);
  EXPECT_THROW(parse_box_net("[[2, 1]]"), PreconditionError);
}

TEST(JsonIo, Points) {
  GenVec p = parse_point("1, eps^2");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1].exact(), parse_exact_net("eps^2"));
  EXPECT_EQ(parse_point("[0, \"-eps\"]").size(), 2u);
  EXPECT_THROW(parse_point("1, eps^"), ParseError);
}

TEST(JsonIo, ValuationAndPositivity) {
  Json v = to_json(valuation(parse_exact_net("eps^3 + eps^4")));
  EXPECT_EQ(v["value"], 3.0);
  EXPECT_FALSE(v["negligible"].get<bool>());
  Json zero = to_json(valuation(GeneralizedNumber(0.0)));
  EXPECT_TRUE(zero["value"].is_null());
  EXPECT_TRUE(zero["negligible"].get<bool>());
  Json pos = to_json(strictly_positive(parse_exact_net("eps^2")));
  EXPECT_EQ(pos["decision"], "true");
  EXPECT_EQ(pos["witness"], 3);
}
