#include "polybox/bivar.hpp"

#include <cmath>

#include "polybox/error.hpp"
#include "polybox/interval.hpp"
#include "polybox/residue.hpp"
#include "polybox/univariate.hpp"

namespace polybox {

namespace {

std::vector<Poly> powers(const Poly& x, int n) {
  std::vector<Poly> out;
  out.reserve(n + 1);
  out.push_back(Poly::constant(x.field(), 1));
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * x);
  return out;
}

// (u X + v Y)^k for k = 0..n.
std::vector<BivarPoly> linear_form_powers(const Poly& u, const Poly& v, int n, const FieldPtr& field) {
  BivarPoly lin(field);
  lin.add_term(1, 0, u);
  lin.add_term(0, 1, v);
  std::vector<BivarPoly> out;
  out.push_back(BivarPoly::constant(Poly::constant(field, 1)));
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * lin);
  return out;
}

}  // namespace

BivarPoly BivarPoly::constant(const Poly& c) { return monomial(c, 0, 0); }

BivarPoly BivarPoly::monomial(const Poly& c, int i, int j) {
  if (!c.field()) throw DomainError("coefficient must be bound to a field");
  if (i < 0 || j < 0) throw DomainError("negative exponent");
  BivarPoly out(c.field());
  out.add_term(i, j, c);
  return out;
}

Poly BivarPoly::coeff(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Poly(field_) : it->second;
}

void BivarPoly::add_term(int i, int j, const Poly& c) {
  if (c.is_zero()) return;
  if (!field_) field_ = c.field();
  if (!same_field(field_, c.field())) throw DomainError("coefficient field mismatch");
  auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int BivarPoly::degree() const noexcept {
  int d = kNegInf;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i + m.j);
  return d;
}

int BivarPoly::degree_x() const noexcept {
  int d = kNegInf;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i);
  return d;
}

int BivarPoly::degree_y() const noexcept {
  int d = kNegInf;
  for (const auto& [m, c] : terms_) d = std::max(d, m.j);
  return d;
}

int BivarPoly::degree_t() const noexcept {
  int d = kNegInf;
  for (const auto& [m, c] : terms_) d = std::max(d, c.degree());
  return d;
}

Poly BivarPoly::evaluate(const Poly& x, const Poly& y) const {
  Poly acc(field_);
  if (is_zero()) return acc;
  const auto xp = powers(x, degree_x());
  const auto yp = powers(y, degree_y());
  for (const auto& [m, c] : terms_) acc += c * xp[m.i] * yp[m.j];
  return acc;
}

BivarPoly BivarPoly::reduced(const Poly& f) const {
  BivarPoly out(field_);
  for (const auto& [m, c] : terms_) out.add_term(m.i, m.j, c % f);
  return out;
}

std::vector<Poly> BivarPoly::specialize_x(const Poly& x) const {
  if (is_zero()) return {};
  const auto xp = powers(x, degree_x());
  std::vector<Poly> out(degree_y() + 1, Poly(field_));
  for (const auto& [m, c] : terms_) out[m.j] += c * xp[m.i];
  return out;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, -c);
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out(a.field_ ? a.field_ : b.field_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
  }
  return out;
}

BivarPoly operator*(const Poly& s, const BivarPoly& a) {
  BivarPoly out(a.field_ ? a.field_ : s.field());
  for (const auto& [m, c] : a.terms_) out.add_term(m.i, m.j, s * c);
  return out;
}

DegreeStats degree_stats(const BivarPoly& f) {
  if (f.is_zero()) throw DomainError("degree statistics of the zero polynomial");
  return {f.degree(), f.degree_x(), f.degree_y(), f.degree_t()};
}

TransformMatrix TransformMatrix::identity(const FieldPtr& field) {
  return {Poly::constant(field, 1), Poly(field), Poly(field), Poly::constant(field, 1)};
}

BivarPoly apply_transform(const BivarPoly& f, const TransformMatrix& m) {
  if (m.determinant().is_zero()) throw DomainError("transform matrix is singular");
  const FieldPtr& field = m.a.field() ? m.a.field() : m.d.field();
  BivarPoly out(field);
  if (f.is_zero()) return out;
  const auto xs = linear_form_powers(m.a, m.b, f.degree_x(), field);
  const auto ys = linear_form_powers(m.c, m.d, f.degree_y(), field);
  for (const auto& [mono, c] : f.terms()) out += c * (xs[mono.i] * ys[mono.j]);
  return out;
}

BivarPoly translate(const BivarPoly& f, const Poly& x0, const Poly& y0) {
  const FieldPtr& field = f.field();
  BivarPoly out(field);
  if (f.is_zero()) return out;
  const Poly one = Poly::constant(field, 1);
  BivarPoly sx = BivarPoly::x(field);
  BivarPoly sy = BivarPoly::y(field);
  sx.add_term(0, 0, x0);
  sy.add_term(0, 0, y0);
  std::vector<BivarPoly> xp{BivarPoly::constant(one)};
  std::vector<BivarPoly> yp{BivarPoly::constant(one)};
  for (int k = 1; k <= f.degree_x(); ++k) xp.push_back(xp.back() * sx);
  for (int k = 1; k <= f.degree_y(); ++k) yp.push_back(yp.back() * sy);
  for (const auto& [mono, c] : f.terms()) out += c * (xp[mono.i] * yp[mono.j]);
  return out;
}

FullDegreeTransform find_full_degree_transform(const BivarPoly& f) {
  if (f.is_zero()) throw DomainError("transform of the zero polynomial");
  const FieldPtr& field = f.field();
  const int d = f.degree();
  auto top_at = [&](const Poly& c) {
    Poly acc(field);
    Poly cp = Poly::constant(field, 1);
    for (int j = 0; j <= d; ++j) {
      acc += f.coeff(d - j, j) * cp;
      cp = cp * c;
    }
    return acc;
  };
  auto finish = [&](const Poly& c) {
    const Poly one = Poly::constant(field, 1);
    TransformMatrix m{one, Poly(field), c, one};
    return FullDegreeTransform{m, apply_transform(f, m)};
  };
  for (int deg = kNegInf;; deg = deg == kNegInf ? 0 : deg + 1) {
    for (const Poly& c : polys_of_degree(field, deg)) {
      if (!top_at(c).is_zero()) return finish(c);
    }
  }
}

std::uint64_t count_points_mod(const BivarPoly& curve, const Poly& f, CountStrategy strategy) {
  const ResidueRing ring(f);
  const BivarPoly g = curve.reduced(f);
  if (g.is_zero()) throw DomainError("curve vanishes identically modulo f");
  const GfTable k(ring);
  const int dx = g.degree_x();
  const int dy = g.degree_y();
  if (strategy == CountStrategy::kAuto) {
    strategy = dy <= 3 ? CountStrategy::kPerXRoots : CountStrategy::kExhaustive;
  }
  using E = GfTable::Elem;
  // c[i][j] as table elements.
  std::vector<std::vector<E>> c(dx + 1, std::vector<E>(dy + 1, 0));
  for (const auto& [m, coef] : g.terms()) c[m.i][m.j] = k.from_poly(coef);
  const std::uint64_t q = k.order();
  auto pows = [&](E x, int n) {
    std::vector<E> p(n + 1, k.one());
    for (int e = 1; e <= n; ++e) p[e] = k.mul(p[e - 1], x);
    return p;
  };
  std::uint64_t total = 0;
  if (strategy == CountStrategy::kPerYRoots) {
    for (std::uint64_t yi = 0; yi < q; ++yi) {
      const auto yp = pows(static_cast<E>(yi), dy);
      upoly::Coeffs<GfTable> h(dx + 1, 0);
      for (int i = 0; i <= dx; ++i) {
        for (int j = 0; j <= dy; ++j) h[i] = k.add(h[i], k.mul(c[i][j], yp[j]));
      }
      total += upoly::distinct_root_count(k, std::move(h));
    }
    return total;
  }
  for (std::uint64_t xi = 0; xi < q; ++xi) {
    const auto xp = pows(static_cast<E>(xi), dx);
    upoly::Coeffs<GfTable> h(dy + 1, 0);
    for (int i = 0; i <= dx; ++i) {
      for (int j = 0; j <= dy; ++j) h[j] = k.add(h[j], k.mul(c[i][j], xp[i]));
    }
    if (strategy == CountStrategy::kPerXRoots) {
      total += upoly::distinct_root_count(k, std::move(h));
      continue;
    }
    for (std::uint64_t yi = 0; yi < q; ++yi) {
      if (k.is_zero(upoly::evaluate(k, h, static_cast<E>(yi)))) ++total;
    }
  }
  return total;
}

WeilCheck weil_window_check(const BivarPoly& curve, const Poly& f, Rational c) {
  if (c.den <= 0 || c.num < 0) throw DomainError("Weil constant must be a nonnegative rational");
  const std::uint64_t count = count_points_mod(curve, f, CountStrategy::kAuto);
  const std::uint64_t n = norm(f);
  const __int128 diff = static_cast<__int128>(count) - static_cast<__int128>(n);
  const __int128 lhs = diff * diff * c.den * c.den;
  const __int128 rhs = static_cast<__int128>(c.num) * c.num * n;
  const double bound = static_cast<double>(c.num) / static_cast<double>(c.den) * std::sqrt(static_cast<double>(n));
  return {count, n, bound, lhs <= rhs};
}

bool is_short_weierstrass(const BivarPoly& f) {
  const Poly y2 = f.coeff(0, 2);
  const Poly x3 = f.coeff(3, 0);
  if (y2.is_zero() || y2.degree() != 0 || (y2 + x3).degree() != kNegInf) return false;
  for (const auto& [m, c] : f.terms()) {
    const bool allowed = (m.i == 0 && m.j == 2) || (m.i == 3 && m.j == 0) || (m.j == 0 && m.i <= 1);
    if (!allowed) return false;
  }
  return true;
}

Rational default_weil_constant(const BivarPoly& f) {
  if (is_short_weierstrass(f)) return {2, 1};
  const std::int64_t d = std::max(f.degree(), 1);
  return {2 * d * d, 1};
}

}  // namespace polybox
