#include "polybox/detmethod.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "polybox/error.hpp"
#include "polybox/parallel.hpp"

namespace polybox {

namespace {

std::uint64_t tuple_count(std::uint64_t n, int omega, std::uint64_t budget, const char* what) {
  unsigned __int128 total = 1;
  for (int i = 0; i < omega; ++i) {
    total *= n;
    if (total > budget) {
      const std::uint64_t shown =
          total > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                            : static_cast<std::uint64_t>(total);
      throw BudgetExceeded(what, shown, budget);
    }
  }
  return static_cast<std::uint64_t>(total);
}

// Decodes tuple number k into omega indices, first coordinate most significant.
void decode(std::uint64_t k, std::uint64_t n, std::vector<std::size_t>& idx) {
  for (std::size_t pos = idx.size(); pos-- > 0;) {
    idx[pos] = static_cast<std::size_t>(k % n);
    k /= n;
  }
}

// values[i][p] = F_i(P_p).
std::vector<std::vector<Poly>> evaluate_forms(const WSet& w, const std::vector<Point>& pts) {
  std::vector<std::vector<Poly>> v(w.forms.size());
  for (std::size_t i = 0; i < w.forms.size(); ++i) {
    v[i].reserve(pts.size());
    for (const Point& p : pts) v[i].push_back(w.forms[i].evaluate(p.x, p.y));
  }
  return v;
}

std::vector<std::size_t> residue_classes(const PointSet& s, const Poly& f) {
  std::map<Point, std::size_t> ids;
  std::vector<std::size_t> out;
  for (const Point& p : s) {
    const auto [it, inserted] = ids.try_emplace(Point{p.x % f, p.y % f}, ids.size());
    out.push_back(it->second);
  }
  return out;
}

std::size_t distinct_of(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& cls,
                        std::vector<std::size_t>& scratch) {
  scratch.clear();
  for (std::size_t i : idx) scratch.push_back(cls[i]);
  std::sort(scratch.begin(), scratch.end());
  return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

void check_modulus(const Poly& f) {
  if (f.degree() < 1 || !is_irreducible(f)) throw DomainError("modulus f must be irreducible");
}

}  // namespace

int WSet::d_w() const noexcept {
  int s = 0;
  for (const BivarPoly& f : forms) s += f.degree();
  return s;
}

WSet make_wset(std::vector<BivarPoly> forms) {
  if (forms.empty()) throw DomainError("empty W-set");
  bool has_one = false;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].is_zero()) throw DomainError("W-set contains the zero form");
    if (forms[i].terms().size() == 1 && forms[i].degree() == 0 && forms[i].coeff(0, 0).is_one()) has_one = true;
    for (std::size_t j = 0; j < i; ++j) {
      if (forms[i] == forms[j]) throw DomainError("W-set forms must be pairwise distinct");
    }
  }
  if (!has_one) throw DomainError("W-set must contain the constant form 1");
  return WSet{std::move(forms), std::nullopt};
}

WSet wset_grid(const FieldPtr& field, int d, int m) {
  if (d < 0 || m < 0) throw DomainError("grid parameters must be nonnegative");
  std::vector<BivarPoly> forms;
  const Poly one = Poly::constant(field, 1);
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= m; ++j) forms.push_back(BivarPoly::monomial(one, i, j));
  }
  WSet w = make_wset(std::move(forms));
  w.grid = {d, m};
  return w;
}

std::vector<Monomial> graded_monomials(int d) {
  std::vector<Monomial> out;
  for (int t = 0; t <= d; ++t) {
    for (int j = 0; j <= t; ++j) out.push_back({t - j, j});
  }
  return out;
}

WSet wset_standard(const FieldPtr& field, int omega) {
  if (omega < 1) throw DomainError("omega must be at least 1");
  std::vector<BivarPoly> forms;
  const Poly one = Poly::constant(field, 1);
  for (int t = 0; static_cast<int>(forms.size()) < omega; ++t) {
    for (int j = 0; j <= t && static_cast<int>(forms.size()) < omega; ++j) {
      forms.push_back(BivarPoly::monomial(one, t - j, j));
    }
  }
  return make_wset(std::move(forms));
}

bool separates_points(const WSet& w, const PointSet& s) {
  const auto v = evaluate_forms(w, s);
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      bool split = false;
      for (const auto& row : v) split = split || row[a] != row[b];
      if (!split) return false;
    }
  }
  return true;
}

Matrix<Poly> w_matrix(const WSet& w, const std::vector<Point>& tuple) {
  const Eigen::Index n = w.omega();
  Matrix<Poly> a(n, static_cast<Eigen::Index>(tuple.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < tuple.size(); ++j) a(i, static_cast<Eigen::Index>(j)) = w.forms[i].evaluate(tuple[j].x, tuple[j].y);
  }
  return a;
}

Poly w_det(const WSet& w, const std::vector<Point>& tuple, DetMethod method) {
  if (static_cast<int>(tuple.size()) != w.omega()) throw DomainError("tuple length must equal omega");
  const Matrix<Poly> a = w_matrix(w, tuple);
  const FieldPtr& field = w.forms.front().field();
  const Poly det = method == DetMethod::kBareiss ? bareiss_determinant<Poly>(a) : cofactor_determinant<Poly>(a);
  return det.field() ? det : Poly(field);
}

int kappa(const std::vector<Point>& tuple, const Poly& f) {
  std::set<Point> residues;
  for (const Point& p : tuple) residues.insert({p.x % f, p.y % f});
  return static_cast<int>(tuple.size() - residues.size());
}

OrdReport verify_ord_inequality(const WSet& w, const PointSet& s, const Poly& f, std::uint64_t budget, unsigned jobs) {
  check_modulus(f);
  const int omega = w.omega();
  const std::uint64_t n = s.size();
  OrdReport r;
  r.omega = omega;
  r.d_w = w.d_w();
  r.tuples_total = n == 0 ? 0 : tuple_count(n, omega, budget, "tuple enumeration");
  if (n == 0) {
    r.pass = true;
    return r;
  }
  const auto values = evaluate_forms(w, s);
  const auto cls = residue_classes(s, f);
  struct Partial {
    std::uint64_t admissible = 0, sum_ord = 0, sum_kappa = 0;
    std::vector<OrdCounterexample> bad;
  };
  // Chunks split on the first coordinate so each chunk is a contiguous block of tuples.
  auto parts = parallel_chunks(n, jobs, [&](std::uint64_t first_lo, std::uint64_t first_hi, unsigned) {
    Partial p;
    std::vector<std::size_t> idx(omega);
    std::vector<std::size_t> scratch;
    const std::uint64_t block = r.tuples_total / n;
    Matrix<Poly> m(omega, omega);
    for (std::uint64_t k = first_lo * block; k < first_hi * block; ++k) {
      decode(k, n, idx);
      const std::size_t distinct_pts = [&] {
        scratch.assign(idx.begin(), idx.end());
        std::sort(scratch.begin(), scratch.end());
        return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
      }();
      if (distinct_pts < static_cast<std::size_t>(omega)) continue;  // equal columns: W = 0
      for (int i = 0; i < omega; ++i) {
        for (int j = 0; j < omega; ++j) m(i, j) = values[i][idx[j]];
      }
      const Poly det = bareiss_determinant<Poly>(m);
      if (det.is_zero()) continue;
      ++p.admissible;
      const int kap = omega - static_cast<int>(distinct_of(idx, cls, scratch));
      const int o = ord(det, f);
      p.sum_ord += o;
      p.sum_kappa += kap;
      if (o < kap) p.bad.push_back({idx, det, o, kap});
    }
    return p;
  });
  bool per_tuple_ok = true;
  for (auto& p : parts) {
    r.tuples_admissible += p.admissible;
    r.sum_ord += p.sum_ord;
    r.sum_kappa += p.sum_kappa;
    per_tuple_ok = per_tuple_ok && p.bad.empty();
    for (auto& c : p.bad) r.counterexamples.push_back(std::move(c));
  }
  r.pass = per_tuple_ok && r.sum_ord >= r.sum_kappa;
  return r;
}

MeanIdentity mean_distinct_identity(const PointSet& s, const Poly& f, int omega, std::uint64_t budget, unsigned jobs) {
  check_modulus(f);
  if (s.empty()) throw DomainError("expectation identity over an empty point set");
  if (omega < 1) throw DomainError("omega must be at least 1");
  const std::uint64_t n = s.size();
  const std::uint64_t total = tuple_count(n, omega, budget, "tuple enumeration");
  const auto cls = residue_classes(s, f);
  auto parts = parallel_chunks(n, jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
    unsigned __int128 acc = 0;
    std::vector<std::size_t> idx(omega);
    std::vector<std::size_t> scratch;
    const std::uint64_t block = total / n;
    for (std::uint64_t k = lo * block; k < hi * block; ++k) {
      decode(k, n, idx);
      acc += distinct_of(idx, cls, scratch);
    }
    return acc;
  });
  MeanIdentity m;
  for (auto a : parts) m.lhs_num += a;
  m.denom = total;
  std::map<std::size_t, std::uint64_t> counts;
  for (std::size_t c : cls) ++counts[c];
  auto power = [omega](std::uint64_t b) {
    unsigned __int128 x = 1;
    for (int i = 0; i < omega; ++i) x *= b;
    return x;
  };
  for (const auto& [c, cnt] : counts) m.rhs_num += power(n) - power(n - cnt);
  m.pass = m.lhs_num == m.rhs_num;
  return m;
}

BivarPoly interpolate_form(const std::vector<Point>& points, int d) {
  if (points.empty()) throw DomainError("interpolation needs at least one point");
  if (d < 0) throw DomainError("degree must be nonnegative");
  const std::set<Point> uniq(points.begin(), points.end());
  if (uniq.size() != points.size()) throw DomainError("interpolation points must be pairwise distinct");
  const FieldPtr& field = points.front().x.field() ? points.front().x.field() : points.front().y.field();
  const auto monos = graded_monomials(d);
  const Eigen::Index rows = static_cast<Eigen::Index>(points.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(monos.size());
  Matrix<Poly> a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Point& p = points[r];
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = pow(p.x, monos[c].i) * pow(p.y, monos[c].j);
  }
  const auto kernel = fraction_free_kernel<Poly>(a);
  if (!kernel) throw DomainError("no curve of degree <= d passes through the points");
  BivarPoly g(field);
  for (Eigen::Index c = 0; c < cols; ++c) g.add_term(monos[c].i, monos[c].j, (*kernel)(c));
  return g;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

WCurveMax max_points_on_wcurve(const WSet& w, const PointSet& s, std::uint64_t budget) {
  const std::size_t n = s.size();
  const std::size_t k = static_cast<std::size_t>(w.omega() - 1);
  WCurveMax out;
  if (n <= k) {
    out.max_points = n;
    out.exhausted = true;
    return out;
  }
  if (k == 0) {
    // The only W-curves of a one-element family are nonzero constants.
    out.subsets = 1;
    out.exhausted = true;
    return out;
  }
  const std::uint64_t subsets = binomial(n, k);
  if (subsets > budget) throw BudgetExceeded("W-curve subset enumeration", subsets, budget);
  const auto values = evaluate_forms(w, s);
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  const Eigen::Index cols = w.omega();
  Matrix<Poly> a(static_cast<Eigen::Index>(k), cols);
  for (;;) {
    for (std::size_t r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) a(static_cast<Eigen::Index>(r), c) = values[c][pick[r]];
    }
    const auto g = fraction_free_kernel<Poly>(a);
    std::uint64_t on_curve = 0;
    for (std::size_t p = 0; p < n; ++p) {
      Poly acc(w.forms.front().field());
      for (Eigen::Index c = 0; c < cols; ++c) acc += values[c][p] * (*g)(c);
      on_curve += acc.is_zero();
    }
    out.max_points = std::max(out.max_points, on_curve);
    ++out.subsets;
    // Next k-combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.exhausted = true;
  return out;
}

}  // namespace polybox
