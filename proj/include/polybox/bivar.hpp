#pragma once

#include <compare>
#include <cstdint>
#include <map>

#include "polybox/poly.hpp"

namespace polybox {

struct Monomial {
  int i = 0;  // exponent of X
  int j = 0;  // exponent of Y

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// F(X, Y) in (F_q[T])[X, Y], stored sparsely; zero coefficients are never stored.
class BivarPoly {
 public:
  using Terms = std::map<Monomial, Poly>;

  BivarPoly() = default;
  explicit BivarPoly(FieldPtr field) : field_(std::move(field)) {}

  static BivarPoly constant(const Poly& c);
  static BivarPoly monomial(const Poly& c, int i, int j);
  static BivarPoly x(const FieldPtr& field) { return monomial(Poly::constant(field, 1), 1, 0); }
  static BivarPoly y(const FieldPtr& field) { return monomial(Poly::constant(field, 1), 0, 1); }

  const FieldPtr& field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Poly coeff(int i, int j) const;
  /// Adds c * X^i Y^j, dropping the term if it cancels.
  void add_term(int i, int j, const Poly& c);

  /// Total degree in (X, Y); kNegInf for zero.
  int degree() const noexcept;
  int degree_x() const noexcept;
  int degree_y() const noexcept;
  int degree_t() const noexcept;

  Poly evaluate(const Poly& x, const Poly& y) const;
  /// Coefficients reduced mod f.
  BivarPoly reduced(const Poly& f) const;
  /// Coefficients of F(x, Y) as a polynomial in Y (index = power of Y).
  std::vector<Poly> specialize_x(const Poly& x) const;

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const Poly& s, const BivarPoly& a);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

 private:
  FieldPtr field_;
  Terms terms_;
};

struct DegreeStats {
  int total;
  int x;
  int y;
  int t;
  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

/// Throws DomainError for the zero polynomial.
DegreeStats degree_stats(const BivarPoly& f);

/// The substitution (X, Y) = (A X' + B Y', C X' + D Y').
struct TransformMatrix {
  Poly a, b, c, d;

  Poly determinant() const { return a * d - b * c; }
  static TransformMatrix identity(const FieldPtr& field);
};

/// F'(X', Y') = F(A X' + B Y', C X' + D Y'), expanded term by term.
/// Throws DomainError when AD - BC = 0.
BivarPoly apply_transform(const BivarPoly& f, const TransformMatrix& m);

/// F(X0 + U, Y0 + V) as a polynomial in (U, V).
BivarPoly translate(const BivarPoly& f, const Poly& x0, const Poly& y0);

struct FullDegreeTransform {
  TransformMatrix matrix;
  BivarPoly transformed;
};

/// Finds X = X', Y = c X' + Y' with deg_{X'} F' = deg F. c runs through F_q in canonical order,
/// then through polynomials of degree 1, 2, ...; the X'^d coefficient is the top form F_d(1, c),
/// which has at most d roots, so the search stops within d + 1 candidates.
FullDegreeTransform find_full_degree_transform(const BivarPoly& f);

enum class CountStrategy {
  kAuto,        // per-x roots when deg_Y <= 3, exhaustive otherwise
  kExhaustive,  // every (x, y) in the residue plane
  kPerXRoots,   // sum over x of #distinct roots in y
  kPerYRoots,   // sum over y of #distinct roots in x
};

/// |{(x, y) in (F_q[T]/f)^2 : F(x, y) = 0 mod f}|. f must be irreducible with |f| <= 2^20;
/// throws DomainError when F vanishes identically mod f.
std::uint64_t count_points_mod(const BivarPoly& f_curve, const Poly& f, CountStrategy strategy = CountStrategy::kAuto);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

struct WeilCheck {
  std::uint64_t count;
  std::uint64_t norm_f;
  double bound;  // C * sqrt(|f|), informational; pass is decided exactly
  bool pass;
};

/// pass <=> |count - |f|| <= C sqrt(|f|), decided in exact integer arithmetic.
WeilCheck weil_window_check(const BivarPoly& f_curve, const Poly& f, Rational c);

/// True when F = u (Y^2 - X^3 - aX - b) for a nonzero constant u.
bool is_short_weierstrass(const BivarPoly& f);
/// 2 for short Weierstrass curves, 2 d^2 otherwise.
Rational default_weil_constant(const BivarPoly& f);

}  // namespace polybox
