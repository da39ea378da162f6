#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "polybox/detmethod.hpp"
#include "polybox/error.hpp"
#include "polybox/text.hpp"
#include "support.hpp"

using namespace polybox;
using polybox::testing::P;
using polybox::testing::random_poly;

namespace {

// G and F are proportional over F_q(T): same support and G_m F_n = G_n F_m for all pairs.
bool proportional(const BivarPoly& g, const BivarPoly& f) {
  if (g.is_zero() || f.is_zero()) return false;
  for (const auto& [m, c] : g.terms()) {
    if (f.coeff(m.i, m.j).is_zero()) return false;
  }
  for (const auto& [m, c] : f.terms()) {
    if (g.coeff(m.i, m.j).is_zero()) return false;
  }
  const auto& [m0, f0] = *f.terms().begin();
  const Poly g0 = g.coeff(m0.i, m0.j);
  for (const auto& [m, c] : f.terms()) {
    if (g.coeff(m.i, m.j) * f0 != g0 * c) return false;
  }
  return true;
}

PointSet random_points(const FieldPtr& k, std::size_t count, int max_deg, Rng& rng) {
  std::vector<Point> pts;
  while (pts.size() < count) {
    pts.push_back({random_poly(k, max_deg, rng), random_poly(k, max_deg, rng)});
    pts = make_point_set(pts);
  }
  return pts;
}

Point pt(const Poly& x, const Poly& y) { return {x, y}; }

}  // namespace

TEST(WSet, GridExamplesAndFormulas) {
  const FieldPtr k = Field::prime(2);
  const WSet w = wset_grid(k, 2, 1);
  EXPECT_EQ(w.omega(), 6);
  EXPECT_EQ(w.d_w(), 9);
  const WSet one = wset_grid(k, 0, 0);
  EXPECT_EQ(one.omega(), 1);
  EXPECT_EQ(one.d_w(), 0);
  for (int d = 0; d <= 6; ++d) {
    for (int m = 0; m <= 6; ++m) {
      const WSet g = wset_grid(k, d, m);
      int direct = 0;
      for (const BivarPoly& f : g.forms) direct += degree_stats(f).total;
      ASSERT_EQ(g.omega(), (d + 1) * (m + 1));
      ASSERT_EQ(g.d_w(), direct);
      ASSERT_EQ(2 * g.d_w(), (d + 1) * (m + 1) * (d + m));
    }
  }
  EXPECT_THROW(make_wset({BivarPoly::x(k)}), DomainError);
  EXPECT_THROW(make_wset({BivarPoly::constant(P(k, {1})), BivarPoly::constant(P(k, {1}))}), DomainError);
}

TEST(WSet, StandardOrderAndSeparation) {
  const FieldPtr k = Field::prime(3);
  const WSet w = wset_standard(k, 4);
  ASSERT_EQ(w.omega(), 4);
  EXPECT_EQ(format_curve(w.forms[1]), "X");
  EXPECT_EQ(format_curve(w.forms[2]), "Y");
  EXPECT_EQ(format_curve(w.forms[3]), "X^2");
  Rng rng(1);
  const PointSet s = random_points(k, 6, 2, rng);
  EXPECT_TRUE(separates_points(wset_grid(k, 1, 1), s));
  EXPECT_FALSE(separates_points(wset_standard(k, 2), make_point_set({pt(P(k, {1}), P(k, {0})), pt(P(k, {1}), P(k, {1}))})));
}

TEST(WDet, Examples) {
  const FieldPtr k = Field::prime(3);
  const WSet w = wset_standard(k, 3);
  const Poly z(k), o = P(k, {1}), t = Poly::variable(k);
  EXPECT_EQ(w_det(w, {pt(z, z), pt(o, z), pt(z, o)}), o);
  EXPECT_EQ(w_det(w, {pt(z, z), pt(o, z), pt(z, z)}), z);
  EXPECT_EQ(w_det(w, {pt(z, z), pt(o, o), pt(t, t)}), z);
  EXPECT_THROW(w_det(w, {pt(z, z)}), DomainError);
}

TEST(WDet, BareissMatchesCofactor) {
  Rng rng(3);
  for (const FieldPtr& k : {Field::prime(2), Field::prime(3), Field::of_order(4)}) {
    for (int omega = 1; omega <= 5; ++omega) {
      const WSet w = wset_standard(k, omega);
      for (int trial = 0; trial < 20; ++trial) {
        const PointSet s = random_points(k, omega, 2, rng);
        ASSERT_EQ(w_det(w, s, DetMethod::kBareiss), w_det(w, s, DetMethod::kCofactor));
      }
    }
  }
}

TEST(WDet, AlternatingUnderPermutations) {
  const FieldPtr k = Field::prime(5);
  const WSet w = wset_grid(k, 1, 1);  // omega = 4
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const PointSet s = random_points(k, 4, 2, rng);
    const Poly base = w_det(w, s);
    std::vector<int> perm{0, 1, 2, 3};
    do {
      int inversions = 0;
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
      }
      std::vector<Point> tuple;
      for (int i : perm) tuple.push_back(s[i]);
      ASSERT_EQ(w_det(w, tuple), inversions % 2 ? -base : base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Kappa, Examples) {
  const FieldPtr k = Field::prime(2);
  const Poly f = Poly::variable(k);
  const Poly z(k), o = P(k, {1}), t = Poly::variable(k);
  EXPECT_EQ(kappa({pt(z, z), pt(o, z), pt(z, o)}, f), 0);
  EXPECT_EQ(kappa({pt(z, z), pt(t, z), pt(t, t)}, f), 2);
  EXPECT_EQ(kappa({pt(z, z), pt(t, z), pt(o, o)}, f), 1);
}

TEST(OrdInequality, Examples) {
  const FieldPtr k = Field::prime(2);
  const WSet w = wset_standard(k, 3);
  const Poly f = Poly::variable(k);
  const Poly z(k), o = P(k, {1}), t = Poly::variable(k);
  const OrdReport a = verify_ord_inequality(w, make_point_set({pt(z, z), pt(o, z), pt(z, o)}), f);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.tuples_total, 27u);
  EXPECT_EQ(a.tuples_admissible, 6u);
  EXPECT_EQ(a.sum_kappa, 0u);
  const PointSet s = make_point_set({pt(z, z), pt(t, z), pt(z, o)});
  EXPECT_EQ(ord(w_det(w, s), f), 1);
  EXPECT_EQ(kappa(s, f), 1);
  const OrdReport b = verify_ord_inequality(w, s, f);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.tuples_admissible, 6u);
  EXPECT_EQ(b.sum_kappa, 6u);
  EXPECT_EQ(b.sum_ord, 6u);
  EXPECT_THROW(verify_ord_inequality(w, s, f, 26), BudgetExceeded);
  EXPECT_THROW(verify_ord_inequality(w, s, P(k, {1, 0, 1})), DomainError);
}

TEST(OrdInequality, PerTupleDivisibilityOracle) {
  // Independent check of f^kappa | W with cofactor determinants and explicit powers of f.
  Rng rng(6);
  for (const FieldPtr& k : {Field::prime(2), Field::prime(3)}) {
    const WSet w = wset_standard(k, 3);
    for (int trial = 0; trial < 10; ++trial) {
      const Poly f = random_irreducible(k, 1 + trial % 2, trial);
      // Plant congruences: points shifted by multiples of f.
      std::vector<Point> pts;
      const Point base{random_poly(k, 1, rng), random_poly(k, 1, rng)};
      pts.push_back(base);
      pts.push_back({base.x + f, base.y});
      pts.push_back({base.x, base.y + f * random_poly(k, 1, rng)});
      pts.push_back({random_poly(k, 2, rng), random_poly(k, 2, rng)});
      const PointSet s = make_point_set(pts);
      const OrdReport r = verify_ord_inequality(w, s, f);
      std::uint64_t admissible = 0;
      for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = 0; b < s.size(); ++b) {
          for (std::size_t c = 0; c < s.size(); ++c) {
            const std::vector<Point> tuple{s[a], s[b], s[c]};
            const Poly det = w_det(w, tuple, DetMethod::kCofactor);
            if (det.is_zero()) continue;
            ++admissible;
            ASSERT_TRUE((det % pow(f, kappa(tuple, f))).is_zero());
          }
        }
      }
      ASSERT_EQ(r.tuples_admissible, admissible);
      ASSERT_TRUE(r.pass);
      ASSERT_GE(r.sum_ord, r.sum_kappa);
    }
  }
}

TEST(OrdInequality, JobsDoNotChangeReport) {
  const FieldPtr k = Field::prime(3);
  Rng rng(2);
  const PointSet s = random_points(k, 6, 1, rng);
  const WSet w = wset_standard(k, 4);
  const Poly f = Poly::variable(k);
  const OrdReport a = verify_ord_inequality(w, s, f, kDefaultTupleBudget, 1);
  const OrdReport b = verify_ord_inequality(w, s, f, kDefaultTupleBudget, 3);
  EXPECT_EQ(a.tuples_admissible, b.tuples_admissible);
  EXPECT_EQ(a.sum_ord, b.sum_ord);
  EXPECT_EQ(a.sum_kappa, b.sum_kappa);
}

TEST(MeanIdentity, Examples) {
  const FieldPtr k = Field::prime(3);
  const Poly f = Poly::variable(k);
  const Poly z(k), o = P(k, {1}), t = Poly::variable(k);
  for (int omega = 1; omega <= 4; ++omega) {
    const MeanIdentity m = mean_distinct_identity(make_point_set({pt(o, t)}), f, omega);
    EXPECT_TRUE(m.pass);
    EXPECT_DOUBLE_EQ(m.lhs(), 1.0);
  }
  const PointSet distinct = make_point_set({pt(z, z), pt(o, z), pt(z, o), pt(o, o)});
  const MeanIdentity d = mean_distinct_identity(distinct, f, 2);
  EXPECT_TRUE(d.pass);
  EXPECT_DOUBLE_EQ(d.rhs(), 2.0 - 1.0 / 4.0);
  const MeanIdentity c = mean_distinct_identity(make_point_set({pt(z, z), pt(t, z)}), f, 2);
  EXPECT_TRUE(c.pass);
  EXPECT_DOUBLE_EQ(c.lhs(), 1.0);
  EXPECT_THROW(mean_distinct_identity(distinct, f, 12, 1000), BudgetExceeded);
}

TEST(MeanIdentity, LhsAgainstKappaOracle) {
  Rng rng(8);
  const FieldPtr k = Field::prime(2);
  for (int trial = 0; trial < 20; ++trial) {
    const PointSet s = random_points(k, 2 + trial % 4, 2, rng);
    const Poly f = random_irreducible(k, 1 + trial % 2, trial);
    const MeanIdentity m = mean_distinct_identity(s, f, 3);
    unsigned __int128 sum = 0;
    for (const Point& a : s) {
      for (const Point& b : s) {
        for (const Point& c : s) sum += 3 - kappa({a, b, c}, f);
      }
    }
    ASSERT_TRUE(m.lhs_num == sum);
    ASSERT_TRUE(m.pass);
  }
}

TEST(Interpolate, LineInCharacteristicTwo) {
  const FieldPtr k = Field::prime(2);
  const BivarPoly g = interpolate_form({pt(Poly(k), Poly(k)), pt(P(k, {1}), P(k, {1}))}, 1);
  EXPECT_EQ(format_curve(g), "X+Y");
}

TEST(Interpolate, ParabolaAndControls) {
  const FieldPtr k = Field::prime(3);
  std::vector<Point> pts;
  for (const Poly& x : {P(k, {0}), P(k, {1}), P(k, {0, 1}), P(k, {2, 1}), P(k, {1, 0, 1})}) pts.push_back(pt(x, x * x));
  const BivarPoly g = interpolate_form(pts, 2);
  for (const Point& p : pts) EXPECT_TRUE(g.evaluate(p.x, p.y).is_zero());
  EXPECT_TRUE(proportional(g, parse_curve("Y-X^2", k)));
  EXPECT_THROW(interpolate_form({pt(P(k, {0}), P(k, {0})), pt(P(k, {1}), P(k, {0})), pt(P(k, {0}), P(k, {1}))}, 1),
               DomainError);
  EXPECT_THROW(interpolate_form({pts[0], pts[0]}, 1), DomainError);
}

TEST(Interpolate, AlwaysVanishesOnInput) {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const FieldPtr k = Field::prime(trial % 2 ? 3 : 5);
    const int d = 1 + trial % 3;
    const std::size_t r = static_cast<std::size_t>((d + 1) * (d + 2) / 2 - 1);
    const PointSet s = random_points(k, r, 2, rng);
    const BivarPoly g = interpolate_form(s, d);
    ASSERT_FALSE(g.is_zero());
    ASSERT_LE(g.degree(), d);
    for (const Point& p : s) ASSERT_TRUE(g.evaluate(p.x, p.y).is_zero());
  }
}

TEST(WCurveMax, Examples) {
  const FieldPtr k = Field::prime(3);
  const WSet w = wset_standard(k, 3);
  std::vector<Point> line;
  for (const Poly& x : Interval(k, 1).elements()) line.push_back(pt(x, x + P(k, {1})));
  const PointSet s = make_point_set(line);
  EXPECT_EQ(max_points_on_wcurve(w, s).max_points, s.size());
  const PointSet general = make_point_set({pt(P(k, {0}), P(k, {0})), pt(P(k, {1}), P(k, {0})), pt(P(k, {0}), P(k, {1}))});
  const WCurveMax g = max_points_on_wcurve(w, general);
  EXPECT_EQ(g.max_points, 2u);
  EXPECT_TRUE(g.exhausted);
  EXPECT_EQ(g.subsets, 3u);
  EXPECT_EQ(max_points_on_wcurve(w, make_point_set({general[0], general[1]})).max_points, 2u);
  EXPECT_THROW(max_points_on_wcurve(w, s, 10), BudgetExceeded);
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(2, 5), 0u);
  EXPECT_EQ(binomial(60, 30), 118264581564861424u);
}
