#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polybox/bivar.hpp"
#include "polybox/boxcount.hpp"
#include "polybox/linalg.hpp"

namespace polybox {

/// An ordered family F_1..F_omega of bivariate forms containing the constant 1.
struct WSet {
  std::vector<BivarPoly> forms;
  std::optional<std::pair<int, int>> grid;  // (d, M) for wset_grid

  int omega() const noexcept { return static_cast<int>(forms.size()); }
  /// d_W = sum of deg F_i.
  int d_w() const noexcept;
};

/// Validates the family: nonzero, pairwise distinct, containing 1.
WSet make_wset(std::vector<BivarPoly> forms);

/// X^i Y^j for 0 <= i <= d, 0 <= j <= M, i-major (i outer, j inner).
WSet wset_grid(const FieldPtr& field, int d, int m);

/// The first omega monomials in graded order 1, X, Y, X^2, XY, Y^2, X^3, ...
WSet wset_standard(const FieldPtr& field, int omega);

/// Monomials of total degree <= d in graded order; n(d) = (d+1)(d+2)/2 of them.
std::vector<Monomial> graded_monomials(int d);

/// True when some form takes different values at every pair of distinct points of S.
bool separates_points(const WSet& w, const PointSet& s);

/// (F_i(P_j)): rows are forms, columns are points.
Matrix<Poly> w_matrix(const WSet& w, const std::vector<Point>& tuple);

enum class DetMethod { kBareiss, kCofactor };

/// W(P_1..P_omega) = det(F_i(P_j)). Throws DomainError when the tuple length is not omega.
Poly w_det(const WSet& w, const std::vector<Point>& tuple, DetMethod method = DetMethod::kBareiss);

/// omega minus the number of distinct residues of the tuple modulo f.
int kappa(const std::vector<Point>& tuple, const Poly& f);

struct OrdCounterexample {
  std::vector<std::size_t> indices;  // positions in S
  Poly detval;
  int ord;
  int kappa;
};

struct OrdReport {
  int omega = 0;
  int d_w = 0;
  std::uint64_t tuples_total = 0;
  std::uint64_t tuples_admissible = 0;
  std::uint64_t sum_ord = 0;    // ord_f of the product of all admissible W(P)
  std::uint64_t sum_kappa = 0;  // sum of kappa over admissible tuples
  bool pass = false;            // every admissible tuple has ord_f W >= kappa, and sum_ord >= sum_kappa
  std::vector<OrdCounterexample> counterexamples;
};

inline constexpr std::uint64_t kDefaultTupleBudget = 1'000'000;

/// Enumerates S^omega. Throws BudgetExceeded when |S|^omega exceeds the budget.
OrdReport verify_ord_inequality(const WSet& w, const PointSet& s, const Poly& f,
                                std::uint64_t budget = kDefaultTupleBudget, unsigned jobs = 1);

struct MeanIdentity {
  // lhs = lhs_num / denom, rhs = rhs_num / denom with denom = |S|^omega.
  unsigned __int128 lhs_num = 0;
  unsigned __int128 rhs_num = 0;
  unsigned __int128 denom = 0;
  bool pass = false;

  double lhs() const noexcept { return static_cast<double>(lhs_num) / static_cast<double>(denom); }
  double rhs() const noexcept { return static_cast<double>(rhs_num) / static_cast<double>(denom); }
};

/// Mean over S^omega of the number of distinct residues, against sum_P (1 - (1 - rho_P)^omega).
MeanIdentity mean_distinct_identity(const PointSet& s, const Poly& f, int omega,
                                    std::uint64_t budget = kDefaultTupleBudget, unsigned jobs = 1);

/// A nonzero G of degree <= d vanishing at every point: a kernel vector of the r x n(d)
/// monomial matrix, with denominators cleared. Throws DomainError when the points repeat or
/// the matrix has full column rank.
BivarPoly interpolate_form(const std::vector<Point>& points, int d);

struct WCurveMax {
  std::uint64_t max_points = 0;
  std::uint64_t subsets = 0;  // (omega-1)-subsets examined
  bool exhausted = false;     // the whole subset family was enumerated
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 100'000;

/// Largest number of points of S on a W-curve through some (omega-1)-subset of S.
/// Throws BudgetExceeded when C(|S|, omega-1) exceeds the budget.
WCurveMax max_points_on_wcurve(const WSet& w, const PointSet& s, std::uint64_t budget = kDefaultSubsetBudget);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace polybox
