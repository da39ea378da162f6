#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "polybox/bivar.hpp"
#include "polybox/interval.hpp"

namespace polybox {

struct Point {
  Poly x;
  Poly y;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

/// Sorted, duplicate-free.
using PointSet = std::vector<Point>;

/// Sorts and removes duplicates.
PointSet make_point_set(std::vector<Point> points);

enum class BoxStrategy {
  kNaive,        // double loop over I_x x I_y
  kRootFinding,  // per-X root finding in Y, see enumerate_box_points
};

struct BoxOptions {
  BoxStrategy strategy = BoxStrategy::kRootFinding;
  unsigned jobs = 1;
};

/// Zeros of F in I_x x I_y (both intervals share the bound n).
///
/// Root finding translates F to the base-0 box, discards X-degrees for which no Y-degree makes
/// the terms of F(U, V) cancel (the maximal term degree must be attained twice), and for each
/// remaining U solves the primitive part of F(U, V) in V: directly when it is linear, otherwise
/// modulo two auxiliary irreducibles whose degrees sum past n, followed by CRT lifting and an
/// exact check of every candidate.
PointSet enumerate_box_points(const BivarPoly& f, const Interval& ix, const Interval& iy, BoxOptions opts = {});
inline PointSet enumerate_box_points(const BivarPoly& f, const Interval& i, BoxOptions opts = {}) {
  return enumerate_box_points(f, i, i, opts);
}

struct ScanRow {
  int n;
  std::uint64_t size_i;  // |I| = q^{n+1}
  std::uint64_t count;   // |S|
  double exponent;       // log|S| / log|I|, 0 when |S| <= 1
};

/// One row per n in [n_lo, n_hi], with boxes X0 + {deg <= n}, Y0 + {deg <= n}.
std::vector<ScanRow> exponent_scan(const BivarPoly& f, const Poly& x0, const Poly& y0, int n_lo, int n_hi,
                                   BoxOptions opts = {});

/// Least-squares slope of log|S| against log|I| over rows with |S| >= 1.
double fitted_exponent(const std::vector<ScanRow>& rows);

struct ResidueProfile {
  Poly f;
  std::uint64_t total = 0;                      // |S|
  std::map<Point, std::uint64_t> counts;        // residue point -> multiplicity
  std::uint64_t norm_f = 0;                     // |f|

  std::uint64_t distinct() const noexcept { return counts.size(); }
  /// alpha = distinct / |f|.
  double alpha() const noexcept { return static_cast<double>(distinct()) / static_cast<double>(norm_f); }
  double rho(const Point& residue) const;
  /// sum of multiplicity^2 (so sum rho^2 = this / |S|^2).
  unsigned __int128 sum_count_squares() const noexcept;
};

/// Throws DomainError on empty S or reducible f.
ResidueProfile residue_stats(const PointSet& s, const Poly& f);

/// sum rho_P = 1, i.e. the multiplicities add up to |S|.
bool rho_sums_to_one(const ResidueProfile& p);
/// sum rho_P^2 >= 1 / (alpha |f|), decided exactly as distinct * sum c_P^2 >= |S|^2.
bool cauchy_bound_holds(const ResidueProfile& p);

}  // namespace polybox
