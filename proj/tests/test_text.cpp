#include <gtest/gtest.h>

#include "polybox/error.hpp"
#include "polybox/text.hpp"
#include "support.hpp"

using namespace polybox;
using polybox::testing::P;
using polybox::testing::random_poly;

TEST(ParseCurve, WeierstrassExample) {
  const FieldPtr k = Field::prime(5);
  const BivarPoly f = parse_curve("Y^2-X^3-(T)*X", k);
  ASSERT_EQ(f.terms().size(), 3u);
  EXPECT_EQ(f.coeff(0, 2), P(k, {1}));
  EXPECT_EQ(f.coeff(3, 0), P(k, {4}));
  EXPECT_EQ(f.coeff(1, 0), P(k, {0, 4}));
}

TEST(ParseCurve, ConstantAndSyntaxError) {
  const FieldPtr k = Field::prime(3);
  const BivarPoly one = parse_curve("1", k);
  EXPECT_EQ(one, BivarPoly::constant(P(k, {1})));
  try {
    parse_curve("X^2+*Y", k);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(parse_curve("", k), ParseError);
  EXPECT_THROW(parse_curve("X^", k), ParseError);
  EXPECT_THROW(parse_curve("(T", k), ParseError);
  EXPECT_THROW(parse_curve("X Y", k), ParseError);
  EXPECT_THROW(parse_curve("X^99999999", k), ParseError);
}

TEST(ParsePoly, Grammar) {
  const FieldPtr k = Field::prime(3);
  EXPECT_EQ(parse_poly("T^3+2*T+1", k), P(k, {1, 2, 0, 1}));
  EXPECT_EQ(parse_poly("-T", k), P(k, {0, 2}));
  EXPECT_EQ(parse_poly(" 7 ", k), P(k, {1}));
  EXPECT_EQ(parse_poly("T+T+T", k), Poly(k));
  EXPECT_EQ(parse_poly("0", k), Poly(k));
  EXPECT_THROW(parse_poly("T^", k), ParseError);
  EXPECT_THROW(parse_poly("2*X", k), ParseError);
  EXPECT_THROW(parse_poly("99999999999999999999999", k), ParseError);
}

TEST(ParsePoly, ExtensionFieldJson) {
  const FieldPtr k = Field::of_order(9);
  EXPECT_EQ(parse_poly("[[0,1],[1]]", k), Poly(k, {3, 1}));
  EXPECT_EQ(parse_poly("[4, 0, 1]", k), Poly(k, {4, 0, 1}));
  EXPECT_EQ(parse_poly("[]", k), Poly(k));
  EXPECT_EQ(format_poly(Poly(k, {3, 1})), "[[0,1],[1,0]]");
  EXPECT_THROW(parse_poly("[[3]]", k), ParseError);
  EXPECT_THROW(parse_poly("[[1,1,1]]", k), ParseError);
  EXPECT_THROW(parse_poly("[9]", k), ParseError);
  EXPECT_THROW(parse_poly("T+1", k), ParseError);
  EXPECT_EQ(parse_curve("([[0,1]])*X+Y", k).coeff(1, 0), Poly(k, {3}));
}

TEST(Format, Canonical) {
  const FieldPtr k = Field::prime(5);
  EXPECT_EQ(format_poly(P(k, {1, 0, 3})), "3*T^2+1");
  EXPECT_EQ(format_poly(Poly(k)), "0");
  EXPECT_EQ(format_curve(parse_curve("Y^2-X^3-(T)*X", k)), "(4)*X^3+(4*T)*X+Y^2");
  EXPECT_EQ(format_curve(parse_curve("X*Y+T+3", k)), "X*Y+(T+3)");
}

TEST(RoundTrip, RandomCorpus) {
  Rng rng(21);
  int items = 0;
  for (const FieldPtr& k : {Field::prime(2), Field::prime(3), Field::prime(5), Field::of_order(4), Field::of_order(9)}) {
    for (int trial = 0; trial < 40; ++trial, ++items) {
      const Poly a = random_poly(k, static_cast<int>(uniform_below(rng, 6)), rng);
      ASSERT_EQ(parse_poly(format_poly(a), k), a);
      BivarPoly f(k);
      const int terms = 1 + static_cast<int>(uniform_below(rng, 5));
      for (int t = 0; t < terms; ++t) {
        f.add_term(static_cast<int>(uniform_below(rng, 4)), static_cast<int>(uniform_below(rng, 4)),
                   random_poly(k, 3, rng));
      }
      const std::string text = format_curve(f);
      const BivarPoly back = parse_curve(text, k);
      ASSERT_EQ(back, f) << text;
      ASSERT_EQ(format_curve(back), text);
    }
  }
  EXPECT_EQ(items, 200);
}
