#include "polybox/boxcount.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "polybox/error.hpp"
#include "polybox/parallel.hpp"
#include "polybox/residue.hpp"
#include "polybox/univariate.hpp"

namespace polybox {

namespace {

constexpr int kNone = -1;  // degree code for the zero polynomial in the pruning table

// Some sum of the terms G_ij U^i V^j with deg U = a, deg V = b can vanish only if every term
// is zero or the largest term degree occurs at least twice.
bool degrees_can_cancel(const BivarPoly& g, int a, int b) {
  int best = kNegInf;
  int hits = 0;
  for (const auto& [m, c] : g.terms()) {
    if ((m.i > 0 && a == kNone) || (m.j > 0 && b == kNone)) continue;
    const int d = c.degree() + (m.i > 0 ? m.i * a : 0) + (m.j > 0 ? m.j * b : 0);
    if (d > best) {
      best = d;
      hits = 1;
    } else if (d == best) {
      ++hits;
    }
  }
  return hits != 1;
}

// Roots of a polynomial over F_q[T] modulo one irreducible, through table arithmetic when the
// residue field is small enough.
class ModularRoots {
 public:
  explicit ModularRoots(const Poly& ell) : ring_(ell) {
    if (ring_.order() <= GfTable::kMaxOrder) table_.emplace(ring_);
  }

  const Poly& modulus() const noexcept { return ring_.modulus(); }

  std::vector<Poly> roots(const std::vector<Poly>& h, Rng& rng) const {
    std::vector<Poly> out;
    if (table_) {
      upoly::Coeffs<GfTable> c;
      for (const Poly& x : h) c.push_back(table_->from_poly(ring_.reduce(x)));
      upoly::trim(*table_, c);
      for (GfTable::Elem r : upoly::roots(*table_, c, rng)) out.push_back(table_->to_poly(r));
      return out;
    }
    upoly::Coeffs<ResidueRing> c;
    for (const Poly& x : h) c.push_back(ring_.reduce(x));
    upoly::trim(ring_, c);
    return upoly::roots(ring_, c, rng);
  }

 private:
  ResidueRing ring_;
  std::optional<GfTable> table_;
};

std::pair<Poly, Poly> auxiliary_moduli(const FieldPtr& field, int n) {
  const int e = std::max(1, (n + 2) / 2);
  const std::uint64_t q = field->order();
  std::uint64_t space = 1;
  for (int i = 0; i < e && space <= 4096; ++i) space *= q;
  if (space <= 4096) {
    const auto irr = monic_irreducibles(field, e);
    if (irr.size() >= 2) return {irr[0], irr[1]};
    return {irr[0], monic_irreducibles(field, e + 1).at(0)};
  }
  const Poly first = random_irreducible(field, e, 0);
  for (std::uint64_t seed = 1;; ++seed) {
    Poly second = random_irreducible(field, e, seed);
    if (second != first) return {first, std::move(second)};
  }
}

struct RootFinder {
  const BivarPoly& g;  // translated curve, in (U, V)
  int n;
  std::optional<ModularRoots> m1, m2;
  Poly inv_l1_mod_l2;

  RootFinder(const BivarPoly& g_in, int n_in) : g(g_in), n(n_in) {
    if (g.degree_y() >= 2) {
      const auto [l1, l2] = auxiliary_moduli(g.field(), n);
      m1.emplace(l1);
      m2.emplace(l2);
      inv_l1_mod_l2 = ext_gcd(l1 % l2, l2).s % l2;
    }
  }

  // All V with deg V <= n and G(U, V) = 0, appended to out.
  void solve(const Poly& u, std::vector<Poly>& out, Rng& rng) const {
    std::vector<Poly> h = g.specialize_x(u);
    while (!h.empty() && h.back().is_zero()) h.pop_back();
    const FieldPtr& field = g.field();
    if (h.empty()) {
      const Interval all(field, n);
      for (std::uint64_t k = 0; k < all.size(); ++k) out.push_back(all.offset_at(k));
      return;
    }
    if (h.size() == 1) return;
    Poly content;
    for (const Poly& c : h) {
      if (!c.is_zero()) content = content.is_zero() ? c.monic() : gcd(content, c);
    }
    if (!content.is_one()) {
      for (Poly& c : h) c = exact_quotient(c, content);
    }
    if (h.size() == 2) {
      const DivRem qr = divrem(-h[0], h[1]);
      if (qr.remainder.is_zero() && qr.quotient.degree() <= n) out.push_back(qr.quotient);
      return;
    }
    const auto r1 = m1->roots(h, rng);
    if (r1.empty()) return;
    const auto r2 = m2->roots(h, rng);
    const Poly& l1 = m1->modulus();
    const Poly& l2 = m2->modulus();
    for (const Poly& a : r1) {
      for (const Poly& b : r2) {
        const Poly v = a + l1 * (((b - a) * inv_l1_mod_l2) % l2);
        if (v.degree() > n) continue;
        Poly acc(field);
        for (std::size_t j = h.size(); j-- > 0;) acc = acc * v + h[j];
        if (acc.is_zero()) out.push_back(v);
      }
    }
  }
};

PointSet enumerate_naive(const BivarPoly& f, const Interval& ix, const Interval& iy, unsigned jobs) {
  const std::uint64_t nx = ix.size();
  const auto ys = iy.elements();
  auto chunks = parallel_chunks(nx, jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    std::vector<Point> pts;
    for (std::uint64_t k = begin; k < end; ++k) {
      const Poly x = ix.at(k);
      const std::vector<Poly> h = f.specialize_x(x);
      for (const Poly& y : ys) {
        Poly acc(f.field());
        for (std::size_t j = h.size(); j-- > 0;) acc = acc * y + h[j];
        if (acc.is_zero()) pts.push_back({x, y});
      }
    }
    return pts;
  });
  std::vector<Point> all;
  for (auto& c : chunks) all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  return make_point_set(std::move(all));
}

PointSet enumerate_roots(const BivarPoly& f, const Interval& ix, const Interval& iy, unsigned jobs) {
  const int n = ix.bound();
  const BivarPoly g = translate(f, ix.base(), iy.base());
  std::vector<Poly> us;
  for (int a = kNone; a <= n; ++a) {
    bool feasible = false;
    for (int b = kNone; b <= n && !feasible; ++b) feasible = degrees_can_cancel(g, a, b);
    if (!feasible) continue;
    auto block = polys_of_degree(ix.field(), a == kNone ? kNegInf : a);
    us.insert(us.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
  }
  const RootFinder finder(g, n);
  auto chunks = parallel_chunks(us.size(), jobs, [&](std::uint64_t begin, std::uint64_t end, unsigned chunk) {
    Rng rng(0x9e3779b97f4a7c15ULL + chunk);
    std::vector<Point> pts;
    std::vector<Poly> vs;
    for (std::uint64_t k = begin; k < end; ++k) {
      vs.clear();
      finder.solve(us[k], vs, rng);
      for (const Poly& v : vs) pts.push_back({ix.base() + us[k], iy.base() + v});
    }
    return pts;
  });
  std::vector<Point> all;
  for (auto& c : chunks) all.insert(all.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  return make_point_set(std::move(all));
}

}  // namespace

PointSet make_point_set(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

PointSet enumerate_box_points(const BivarPoly& f, const Interval& ix, const Interval& iy, BoxOptions opts) {
  if (f.is_zero()) throw DomainError("box enumeration of the zero polynomial");
  if (ix.bound() != iy.bound()) throw DomainError("box sides must share the degree bound");
  if (!same_field(ix.field(), f.field()) || !same_field(iy.field(), f.field())) {
    throw DomainError("box and curve live over different fields");
  }
  if (opts.strategy == BoxStrategy::kNaive) return enumerate_naive(f, ix, iy, opts.jobs);
  return enumerate_roots(f, ix, iy, opts.jobs);
}

std::vector<ScanRow> exponent_scan(const BivarPoly& f, const Poly& x0, const Poly& y0, int n_lo, int n_hi,
                                   BoxOptions opts) {
  if (n_lo < 0 || n_hi < n_lo) throw DomainError("empty or negative n range");
  std::vector<ScanRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    const Interval ix(x0, n);
    const Interval iy(y0, n);
    const std::uint64_t count = enumerate_box_points(f, ix, iy, opts).size();
    const std::uint64_t size = ix.size();
    const double e = count <= 1 ? 0.0 : std::log(static_cast<double>(count)) / std::log(static_cast<double>(size));
    rows.push_back({n, size, count, e});
  }
  return rows;
}

double fitted_exponent(const std::vector<ScanRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const ScanRow& r : rows) {
    if (r.count == 0) continue;
    const double x = std::log(static_cast<double>(r.size_i));
    const double y = std::log(static_cast<double>(r.count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw DomainError("need at least two nonempty rows to fit an exponent");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double ResidueProfile::rho(const Point& residue) const {
  const auto it = counts.find(residue);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

unsigned __int128 ResidueProfile::sum_count_squares() const noexcept {
  unsigned __int128 s = 0;
  for (const auto& [p, c] : counts) s += static_cast<unsigned __int128>(c) * c;
  return s;
}

ResidueProfile residue_stats(const PointSet& s, const Poly& f) {
  if (s.empty()) throw DomainError("residue statistics of an empty point set");
  if (f.degree() < 1 || !is_irreducible(f)) throw DomainError("residue modulus must be irreducible");
  ResidueProfile p;
  p.f = f;
  p.total = s.size();
  p.norm_f = norm(f);
  for (const Point& pt : s) ++p.counts[Point{pt.x % f, pt.y % f}];
  return p;
}

bool rho_sums_to_one(const ResidueProfile& p) {
  std::uint64_t sum = 0;
  for (const auto& [pt, c] : p.counts) sum += c;
  return sum == p.total;
}

bool cauchy_bound_holds(const ResidueProfile& p) {
  const unsigned __int128 n = p.total;
  return static_cast<unsigned __int128>(p.distinct()) * p.sum_count_squares() >= n * n;
}

}  // namespace polybox
