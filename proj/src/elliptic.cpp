#include "polybox/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "polybox/error.hpp"
#include "polybox/parallel.hpp"
#include "polybox/residue.hpp"

namespace polybox {

namespace {

constexpr std::uint64_t kMaxScan = std::uint64_t{1} << 20;

void check_modulus(const Poly& f) {
  if (f.degree() < 1 || !is_irreducible(f)) throw DomainError("modulus f must be irreducible");
}

Poly int_const(const FieldPtr& k, std::int64_t v) { return Poly::constant(k, k->from_integer(v)); }

// Projective class of (u : v) over the residue field, for (u, v) != (0, 0).
Poly projective_key(const ResidueRing& r, const Poly& u, const Poly& v, const Poly& infinity) {
  if (v.is_zero()) return infinity;
  return r.mul(u, r.inv(v));
}

}  // namespace

Poly discriminant(const Poly& a, const Poly& b) {
  const FieldPtr& k = a.field() ? a.field() : b.field();
  return int_const(k, 4) * a * a * a + int_const(k, 27) * b * b;
}

ECPair make_ec_pair(const Poly& a, const Poly& b) {
  const FieldPtr& k = a.field() ? a.field() : b.field();
  if (!k) throw DomainError("curve coefficients must be bound to a field");
  if (discriminant(a, b).is_zero()) throw DomainError("4a^3 + 27b^2 vanishes");
  return ECPair{a, b, k->characteristic() <= 3};
}

BivarPoly weierstrass_curve(const ECPair& e) {
  const FieldPtr& k = e.a.field() ? e.a.field() : e.b.field();
  BivarPoly f(k);
  f.add_term(0, 2, Poly::constant(k, 1));
  f.add_term(3, 0, -Poly::constant(k, 1));
  f.add_term(1, 0, -e.a);
  f.add_term(0, 0, -e.b);
  return f;
}

bool invariant_congruent(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& f) {
  check_modulus(f);
  const ResidueRing r(f);
  const Poly lhs = r.mul(r.pow(r.reduce(a), 3), r.pow(r.reduce(d), 2));
  const Poly rhs = r.mul(r.pow(r.reduce(c), 3), r.pow(r.reduce(b), 2));
  return lhs == rhs;
}

std::optional<Poly> iso_witness_exhaustive(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                                           const Poly& f) {
  check_modulus(f);
  const ResidueRing r(f);
  if (r.order() > kMaxScan) throw BudgetExceeded("residue scan", r.order(), kMaxScan);
  const Poly ra = r.reduce(a), rb = r.reduce(b), rc = r.reduce(c), rd = r.reduce(d);
  for (std::uint64_t k = 1; k < r.order(); ++k) {  // t must be a unit
    const Poly t = r.element_at(k);
    const Poly t2 = r.mul(t, t);
    const Poly t4 = r.mul(t2, t2);
    if (r.mul(ra, t4) == rc && r.mul(rb, r.mul(t4, t2)) == rd) return t;
  }
  return std::nullopt;
}

std::optional<Poly> iso_witness(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& f) {
  check_modulus(f);
  const ResidueRing r(f);
  const Poly ra = r.reduce(a), rb = r.reduce(b), rc = r.reduce(c), rd = r.reduce(d);
  if (ra.is_zero() || rb.is_zero() || rc.is_zero() || rd.is_zero()) return iso_witness_exhaustive(a, b, c, d, f);
  const Poly u = r.mul(r.mul(rd, ra), r.inv(r.mul(rb, rc)));
  const auto t = r.sqrt(u);
  if (!t) return std::nullopt;
  // t and -t give the same t^4 and t^6.
  const Poly t2 = r.mul(*t, *t);
  const Poly t4 = r.mul(t2, t2);
  if (r.mul(ra, t4) != rc || r.mul(rb, r.mul(t4, t2)) != rd) return std::nullopt;
  return *t;
}

std::uint64_t count_N_lambda(const Interval& i, const Poly& lambda, const Poly& f) {
  check_modulus(f);
  const ResidueRing r(f);
  const auto elems = i.elements();
  std::vector<Poly> cubes, squares;
  for (const Poly& x : elems) {
    const Poly rx = r.reduce(x);
    cubes.push_back(r.mul(r.mul(rx, rx), rx));
    squares.push_back(r.mul(rx, rx));
  }
  const Poly l = r.reduce(lambda);
  std::uint64_t n = 0;
  for (const Poly& a3 : cubes) {
    for (const Poly& b2 : squares) n += a3 == r.mul(l, b2);
  }
  return n;
}

std::uint64_t LambdaCensus::n_lambda(const Poly& lambda, const Poly& f) const {
  const auto it = by_lambda.find(lambda % f);
  return (it == by_lambda.end() ? 0 : it->second) + both_divisible;
}

LambdaCensus lambda_census(const Interval& i, const Poly& f, unsigned jobs) {
  check_modulus(f);
  const ResidueRing r(f);
  const auto elems = i.elements();
  std::vector<Poly> red;
  for (const Poly& x : elems) red.push_back(r.reduce(x));
  auto parts = parallel_chunks(red.size(), jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
    LambdaCensus c;
    for (std::uint64_t ia = lo; ia < hi; ++ia) {
      const Poly a3 = r.pow(red[ia], 3);
      for (const Poly& b : red) {
        if (b.is_zero()) {
          c.both_divisible += red[ia].is_zero();
          continue;
        }
        ++c.by_lambda[r.mul(a3, r.inv(r.mul(b, b)))];
      }
    }
    return c;
  });
  LambdaCensus out;
  for (auto& p : parts) {
    out.both_divisible += p.both_divisible;
    for (auto& [l, n] : p.by_lambda) out.by_lambda[l] += n;
  }
  return out;
}

std::uint64_t count_N(const Interval& i, const Poly& f, CensusMethod method, unsigned jobs) {
  check_modulus(f);
  const ResidueRing r(f);
  const auto elems = i.elements();
  std::vector<Poly> cubes, squares;
  for (const Poly& x : elems) {
    const Poly rx = r.reduce(x);
    squares.push_back(r.mul(rx, rx));
    cubes.push_back(r.mul(squares.back(), rx));
  }
  const std::uint64_t size = elems.size();
  if (method == CensusMethod::kQuadruple) {
    auto parts = parallel_chunks(size, jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
      std::uint64_t n = 0;
      for (std::uint64_t a = lo; a < hi; ++a) {
        for (std::uint64_t b = 0; b < size; ++b) {
          for (std::uint64_t c = 0; c < size; ++c) {
            for (std::uint64_t d = 0; d < size; ++d) {
              n += r.mul(cubes[a], squares[d]) == r.mul(cubes[c], squares[b]);
            }
          }
        }
      }
      return n;
    });
    std::uint64_t n = 0;
    for (auto p : parts) n += p;
    return n;
  }
  // Pairs with a = b = 0 mod f match everything; the rest match exactly within a class of
  // (a^3 : b^2).
  const Poly infinity = Poly::monomial(f.field(), 1, f.degree());  // not a residue
  std::map<Poly, std::uint64_t> classes;
  std::uint64_t zero_pairs = 0;
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      if (cubes[a].is_zero() && squares[b].is_zero()) {
        ++zero_pairs;
        continue;
      }
      ++classes[projective_key(r, cubes[a], squares[b], infinity)];
    }
  }
  const unsigned __int128 pairs = static_cast<unsigned __int128>(size) * size;
  unsigned __int128 n = pairs * pairs - (pairs - zero_pairs) * (pairs - zero_pairs);
  for (const auto& [k, cnt] : classes) n += static_cast<unsigned __int128>(cnt) * cnt;
  return static_cast<std::uint64_t>(n);
}

bool Scan19::ratio_at_most(std::uint64_t c) const {
  const unsigned __int128 m = max_count;
  const unsigned __int128 cc = c;
  return m * m * m <= cc * cc * cc * size_i;
}

Scan19 theorem19_scan(const Interval& i, const Poly& f, bool force, unsigned jobs) {
  check_modulus(f);
  const int n = i.bound();
  if (!force && 9 * (n + 1) > f.degree()) {
    throw DomainError("box too large for the modulus: need |I|^9 <= |f| (use --force to override)");
  }
  const LambdaCensus census = lambda_census(i, f, jobs);
  Scan19 s;
  s.size_i = i.size();
  s.norm_f = norm(f);
  for (const auto& [l, cnt] : census.by_lambda) {
    const std::uint64_t total = cnt + census.both_divisible;
    s.rows.push_back({l, total});
    s.max_count = std::max(s.max_count, total);
  }
  s.ratio_to_cuberoot = static_cast<double>(s.max_count) / std::cbrt(static_cast<double>(s.size_i));
  return s;
}

std::uint64_t extremal_count(const Interval& i) {
  if (!i.base().is_zero()) throw DomainError("extremal count needs a base-0 box");
  const Interval candidates(i.field(), i.bound() / 2);
  std::uint64_t n = 0;
  candidates.for_each([&](const Poly& x) {
    const Poly x2 = x * x;
    n += i.contains(x2) && i.contains(x2 * x);
  });
  return n;
}

namespace {

void check_instance(const PigeonInstance& inst) {
  check_modulus(inst.f);
  if (inst.xs.size() != inst.taus.size() || inst.xs.empty()) {
    throw DomainError("pigeonhole instance needs matching, nonempty X and tau lists");
  }
  for (int tau : inst.taus) {
    if (tau < 0 || tau > inst.f.degree()) throw DomainError("each tau must lie in [0, deg f]");
  }
}

}  // namespace

bool pigeonhole_verify(const PigeonInstance& inst, const Poly& t) {
  if ((t % inst.f).is_zero()) return false;
  const std::uint64_t q = inst.f.field()->order();
  for (std::size_t i = 0; i < inst.xs.size(); ++i) {
    if (frac_dist(inst.xs[i] * t, inst.f) >= checked_pow(q, inst.taus[i])) return false;
  }
  return true;
}

std::optional<Poly> pigeonhole_solve(const PigeonInstance& inst) {
  check_instance(inst);
  const FieldPtr& k = inst.f.field();
  const int m = inst.f.degree();
  // Row per killed coefficient: coefficient r of X_i T^c rem f, for c = 0..m-1.
  std::vector<std::vector<Elem>> rows;
  for (std::size_t i = 0; i < inst.xs.size(); ++i) {
    std::vector<Poly> cols;
    Poly basis = inst.xs[i] % inst.f;
    for (int c = 0; c < m; ++c) {
      cols.push_back(basis);
      basis = basis.shifted(1) % inst.f;
    }
    for (int r = inst.taus[i]; r < m; ++r) {
      std::vector<Elem> row(m);
      for (int c = 0; c < m; ++c) row[c] = cols[c].coeff(r);
      rows.push_back(std::move(row));
    }
  }
  // Reduced row echelon form over F_q.
  std::vector<int> pivot_of_col(m, -1);
  std::size_t rank = 0;
  for (int c = 0; c < m && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Elem inv = k->inv(rows[rank][c]);
    for (Elem& e : rows[rank]) e = k->mul(e, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Elem factor = rows[r][c];
      for (int j = 0; j < m; ++j) rows[r][j] = k->sub(rows[r][j], k->mul(factor, rows[rank][j]));
    }
    pivot_of_col[c] = static_cast<int>(rank);
    ++rank;
  }
  int free_col = 0;
  while (free_col < m && pivot_of_col[free_col] >= 0) ++free_col;
  if (free_col == m) return std::nullopt;
  std::vector<Elem> t(m, 0);
  t[free_col] = 1;
  for (int c = 0; c < m; ++c) {
    if (pivot_of_col[c] >= 0) t[c] = k->neg(rows[pivot_of_col[c]][free_col]);
  }
  return Poly(k, std::move(t));
}

Poly pigeonhole_multiplier(const PigeonInstance& inst) {
  check_instance(inst);
  long sum = 0;
  for (int tau : inst.taus) sum += tau;
  const long s = static_cast<long>(inst.taus.size());
  if (sum <= (s - 1) * inst.f.degree()) {
    throw DomainError("pigeonhole precondition fails: need sum tau > (s - 1) deg f");
  }
  auto t = pigeonhole_solve(inst);
  if (!t) throw DomainError("pigeonhole system has only the zero solution");
  return *t;
}

std::optional<Poly> pigeonhole_exhaustive(const PigeonInstance& inst) {
  check_instance(inst);
  const Interval residues(inst.f.field(), inst.f.degree() - 1);
  if (residues.size() > kMaxScan) throw BudgetExceeded("residue scan", residues.size(), kMaxScan);
  for (std::uint64_t k = 1; k < residues.size(); ++k) {
    const Poly t = residues.offset_at(k);
    if (pigeonhole_verify(inst, t)) return t;
  }
  return std::nullopt;
}

TauPlan default_tau_plan(int m, int n) {
  if (m < 1 || n < 0) throw DomainError("tau plan needs deg f >= 1 and n >= 0");
  TauPlan p;
  const int len = n + 1;  // |I| = q^len
  p.tau_t = std::max(0, (m - 4 * len) / 5);
  const int tt = p.tau_t;
  p.taus = {4 * tt + 2 * len, m - tt - len, m - tt, m - tt - len, m - tt};
  for (int& tau : p.taus) tau = std::clamp(tau, 0, m);
  long sum = 0;
  for (int tau : p.taus) sum += tau;
  // Clamping can lose more than one unit when m is small against n; the total never exceeds 5m.
  for (std::size_t j = 0; sum <= 4L * m; j = (j + 1) % p.taus.size()) {
    if (p.taus[j] < m) {
      ++p.taus[j];
      ++sum;
    }
  }
  return p;
}

bool SmallModel::bounds_hold() const {
  const std::uint64_t q = f.field()->order();
  for (int i = 0; i < 5; ++i) {
    if (((fis[i] - xs[i] * t) % f).degree() != kNegInf) return false;
    if (norm(fis[i]) >= checked_pow(q, taus[i])) return false;
  }
  const Poly rhs = -(t * (lambda * x0 * x0 - x0 * x0 * x0));
  return ((fis[5] - rhs) % f).is_zero() && norm(fis[5]) < norm(f);
}

bool SmallModel::original_holds(const Poly& x, const Poly& y) const {
  const Poly u = x + x0;
  const Poly v = x0 + y;
  return ((u * u * u - lambda * v * v) % f).is_zero();
}

bool SmallModel::model_holds(const Poly& x, const Poly& y) const {
  const Poly lhs = fis[0] * x * x * x + fis[1] * x * x + fis[2] * x + fis[3] * y * y + fis[4] * y + fis[5];
  return (lhs % f).is_zero();
}

SmallModel small_coeff_model(const Poly& lambda, const Poly& x0, const Poly& f, int n, const TauPlan& plan) {
  check_modulus(f);
  const FieldPtr& k = f.field();
  SmallModel s;
  s.lambda = lambda;
  s.x0 = x0;
  s.f = f;
  s.n = n;
  s.taus = plan.taus;
  const Poly three = int_const(k, 3);
  const Poly two = int_const(k, 2);
  s.xs = {Poly::constant(k, 1), three * x0, three * x0 * x0, -lambda, -(two * lambda * x0)};
  PigeonInstance inst{f, std::vector<Poly>(s.xs.begin(), s.xs.end()), std::vector<int>(plan.taus.begin(), plan.taus.end())};
  s.t = pigeonhole_multiplier(inst);
  for (int i = 0; i < 5; ++i) s.fis[i] = (s.xs[i] * s.t) % f;
  s.fis[5] = (-(s.t * (lambda * x0 * x0 - x0 * x0 * x0))) % f;
  // deg of f_1 X^3 + f_2 X^2 + f_3 X + f_4 Y^2 + f_5 Y + f_6 with deg X, deg Y <= n.
  const std::array<int, 6> powers{3, 2, 1, 2, 1, 0};
  int top = kNegInf;
  for (int i = 0; i < 6; ++i) {
    if (!s.fis[i].is_zero()) top = std::max(top, s.fis[i].degree() + powers[i] * n);
  }
  s.z_bound = top == kNegInf || top < f.degree() ? 0 : checked_pow(k->order(), top - f.degree());
  return s;
}

}  // namespace polybox
