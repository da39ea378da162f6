#include <gtest/gtest.h>

#include <cmath>

#include "polybox/boxcount.hpp"
#include "polybox/error.hpp"
#include "polybox/text.hpp"
#include "support.hpp"

using namespace polybox;
using polybox::testing::P;
using polybox::testing::random_poly;

namespace {

BivarPoly random_curve(const FieldPtr& k, int max_total, int max_t, Rng& rng) {
  BivarPoly f(k);
  for (int i = 0; i <= max_total; ++i) {
    for (int j = 0; i + j <= max_total; ++j) {
      if (uniform_below(rng, 3) == 0) f.add_term(i, j, random_poly(k, max_t, rng));
    }
  }
  if (f.is_zero()) f.add_term(0, 1, Poly::constant(k, 1));
  return f;
}

void expect_strategies_agree(const BivarPoly& f, const Interval& ix, const Interval& iy) {
  const PointSet naive = enumerate_box_points(f, ix, iy, {BoxStrategy::kNaive, 1});
  const PointSet fast = enumerate_box_points(f, ix, iy, {BoxStrategy::kRootFinding, 1});
  ASSERT_EQ(naive, fast) << format_curve(f) << " n=" << ix.bound() << " bases " << format_poly(ix.base()) << ", "
                         << format_poly(iy.base());
  for (const Point& p : fast) {
    ASSERT_TRUE(f.evaluate(p.x, p.y).is_zero());
    ASSERT_TRUE(ix.contains(p.x) && iy.contains(p.y));
  }
}

}  // namespace

TEST(EnumerateBox, ParabolaExample) {
  const FieldPtr k = Field::prime(2);
  const BivarPoly f = parse_curve("Y-X^2", k);
  const PointSet s = enumerate_box_points(f, Interval(k, 4));
  ASSERT_EQ(s.size(), 8u);
  std::vector<Point> expect;
  for (const Poly& x : Interval(k, 2).elements()) expect.push_back({x, x * x});
  EXPECT_EQ(s, make_point_set(expect));
}

TEST(EnumerateBox, ConstantCurveIsEmpty) {
  const FieldPtr k = Field::prime(3);
  EXPECT_TRUE(enumerate_box_points(parse_curve("1", k), Interval(k, 3)).empty());
  EXPECT_THROW(enumerate_box_points(BivarPoly(k), Interval(k, 1)), DomainError);
}

TEST(EnumerateBox, ClosedFormSmall) {
  for (std::uint32_t q : {2u, 3u}) {
    const FieldPtr k = Field::prime(q);
    for (int d = 2; d <= 4; ++d) {
      BivarPoly f = BivarPoly::y(k);
      f.add_term(d, 0, Poly::constant(k, k->neg(1)));
      for (int n = 0; n <= 8; ++n) {
        ASSERT_EQ(enumerate_box_points(f, Interval(k, n)).size(), checked_pow(q, n / d + 1));
      }
    }
  }
}

TEST(EnumerateBox, StrategiesAgreeOnCorpus) {
  const std::vector<const char*> fixed{
      "Y-X^2",         "Y-X^3",           "Y^2-X^3",         "Y^2-X^3-X",         "Y^2-X^3-(T)*X-(1)",
      "X*Y-1",         "X*Y-(T)",         "X*Y",             "X^2-Y^2",           "X^2+X*Y+Y^2",
      "(T)*Y-X^2",     "(T+1)*Y^2-X",     "Y^3-X^3",         "X^3+Y^3+(T)",       "X",
      "Y-(T^2)",       "X^2*Y-(T)*Y^2",   "(T)*X^2-(T)*Y",   "Y^2+X*Y-X^3-(T)",   "X^3-(T^3)"};
  for (std::uint32_t q : {2u, 3u}) {
    const FieldPtr k = Field::prime(q);
    Rng rng(q * 101);
    for (const char* text : fixed) {
      const BivarPoly f = parse_curve(text, k);
      for (int n = 0; n <= (q == 2 ? 4 : 3); ++n) {
        expect_strategies_agree(f, Interval(k, n), Interval(k, n));
        const Poly bx = random_poly(k, n + 2, rng);
        const Poly by = random_poly(k, n + 2, rng);
        expect_strategies_agree(f, Interval(bx, n), Interval(by, n));
      }
    }
    for (int trial = 0; trial < 60; ++trial) {
      const BivarPoly f = random_curve(k, 3, 2, rng);
      const int n = static_cast<int>(uniform_below(rng, q == 2 ? 5 : 4));
      const Poly bx = random_poly(k, 3, rng);
      const Poly by = random_poly(k, 3, rng);
      expect_strategies_agree(f, Interval(bx, n), Interval(by, n));
    }
  }
}

TEST(EnumerateBox, StrategiesAgreeOnLargerRandomCases) {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t q = trial % 3 == 0 ? 5 : (trial % 3 == 1 ? 3 : 2);
    const FieldPtr k = Field::prime(q);
    const int n = q == 5 ? 2 : (q == 3 ? 4 : 6);
    // Curves built to pass through a planted point, so the answer is rarely empty.
    BivarPoly f = random_curve(k, 3, 2, rng);
    const Poly x = random_poly(k, n, rng);
    const Poly y = random_poly(k, n, rng);
    f.add_term(0, 0, -f.evaluate(x, y));
    if (f.is_zero()) continue;
    expect_strategies_agree(f, Interval(k, n), Interval(k, n));
  }
}

TEST(EnumerateBox, JobsDoNotChangeOutput) {
  const FieldPtr k = Field::prime(3);
  const BivarPoly f = parse_curve("Y^2-X^3-(T)*X-(T+1)", k);
  const Interval i(P(k, {1, 2}), 5);
  const PointSet one = enumerate_box_points(f, i, {BoxStrategy::kRootFinding, 1});
  EXPECT_EQ(enumerate_box_points(f, i, {BoxStrategy::kRootFinding, 4}), one);
  EXPECT_EQ(enumerate_box_points(f, i, {BoxStrategy::kNaive, 3}), one);
}

TEST(ExponentScan, Examples) {
  const FieldPtr k = Field::prime(2);
  const BivarPoly f = parse_curve("Y-X^2", k);
  const auto rows = exponent_scan(f, Poly(k), Poly(k), 1, 10);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[3].n, 4);
  EXPECT_EQ(rows[3].size_i, 32u);
  EXPECT_EQ(rows[3].count, 8u);
  EXPECT_NEAR(rows[3].exponent, 0.6, 1e-12);
  EXPECT_NEAR(rows[9].exponent, 6.0 / 11.0, 1e-12);
  const auto empty = exponent_scan(parse_curve("1", k), Poly(k), Poly(k), 0, 2);
  for (const auto& r : empty) EXPECT_EQ(r.exponent, 0.0);
}

TEST(ExponentScan, MonotoneInN) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const FieldPtr k = Field::prime(trial % 2 ? 3 : 2);
    const BivarPoly f = random_curve(k, 3, 1, rng);
    const auto rows = exponent_scan(f, random_poly(k, 2, rng), random_poly(k, 2, rng), 0, 4);
    for (std::size_t i = 1; i < rows.size(); ++i) ASSERT_GE(rows[i].count, rows[i - 1].count);
  }
}

TEST(ExponentScan, FittedSlope) {
  const FieldPtr k = Field::prime(2);
  const auto rows = exponent_scan(parse_curve("Y-X^3", k), Poly(k), Poly(k), 6, 12);
  EXPECT_NEAR(fitted_exponent(rows), 1.0 / 3.0, 0.05);
  EXPECT_THROW(fitted_exponent({}), DomainError);
}

TEST(ResidueStats, Examples) {
  const FieldPtr k = Field::prime(3);
  const Poly f = P(k, {1, 0, 1});  // |f| = 9
  const PointSet distinct = make_point_set({{P(k, {0}), P(k, {1})}, {P(k, {1}), P(k, {1})}, {P(k, {2}), P(k, {0, 1})}});
  const ResidueProfile a = residue_stats(distinct, f);
  EXPECT_EQ(a.distinct(), 3u);
  for (const auto& [p, c] : a.counts) EXPECT_DOUBLE_EQ(a.rho(p), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(a.alpha(), 3.0 / 9.0);
  const PointSet congruent = make_point_set({{P(k, {1}), P(k, {2})}, {P(k, {2, 0, 1}), P(k, {2})}});
  const ResidueProfile b = residue_stats(congruent, f);
  ASSERT_EQ(b.distinct(), 1u);
  EXPECT_DOUBLE_EQ(b.rho(b.counts.begin()->first), 1.0);
  EXPECT_THROW(residue_stats({}, f), DomainError);
  EXPECT_THROW(residue_stats(distinct, P(k, {2, 0, 1})), DomainError);
}

TEST(ResidueStats, CauchyAndSumOnRandomProfiles) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const FieldPtr k = Field::prime(trial % 2 ? 3 : 2);
    const BivarPoly f = random_curve(k, 3, 1, rng);
    const PointSet s = enumerate_box_points(f, Interval(random_poly(k, 2, rng), 3));
    if (s.empty()) continue;
    const Poly m = random_irreducible(k, 1 + static_cast<int>(uniform_below(rng, 3)), trial);
    const ResidueProfile p = residue_stats(s, m);
    ASSERT_TRUE(rho_sums_to_one(p));
    ASSERT_TRUE(cauchy_bound_holds(p));
    double sum_sq = 0;
    for (const auto& [pt, c] : p.counts) sum_sq += p.rho(pt) * p.rho(pt);
    ASSERT_GE(sum_sq + 1e-12, 1.0 / (p.alpha() * static_cast<double>(p.norm_f)));
    ASSERT_LE(p.distinct(), std::min<std::uint64_t>(s.size(), p.norm_f * p.norm_f));
  }
}
