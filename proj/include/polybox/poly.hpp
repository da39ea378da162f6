#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "polybox/field.hpp"

namespace polybox {

/// Degree of the zero polynomial.
inline constexpr int kNegInf = std::numeric_limits<int>::min();

/// An element of F_q[T]. Coefficients are stored low to high with no trailing zero.
///
/// A default-constructed Poly is a zero that is not yet bound to a field; it adopts the field
/// of the other operand in arithmetic. This lets Poly sit inside Eigen matrices.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, Elem c, int exponent);
  /// The indeterminate T.
  static Poly variable(FieldPtr field);

  const FieldPtr& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }
  Elem coeff(int i) const noexcept {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
  }
  std::span<const Elem> coeffs() const noexcept { return c_; }
  Elem leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const noexcept { return c_.size() <= 1; }

  Poly monic() const;
  Poly scaled(Elem s) const;
  /// this * T^k.
  Poly shifted(int k) const;
  /// Polynomial truncated to the terms of degree < k (this mod T^k).
  Poly truncated(int k) const;
  Elem evaluate(Elem t) const noexcept;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.c_ == b.c_; }
  /// Canonical total order: by degree, then coefficients from the top down in element order.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept;

 private:
  void trim() noexcept;
  const Field& bind(const Poly& o);

  FieldPtr field_;
  std::vector<Elem> c_;
};

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// a = quotient * b + remainder with deg remainder < deg b. Throws DomainError on b = 0.
DivRem divrem(const Poly& a, const Poly& b);
inline Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).quotient; }
inline Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).remainder; }
/// a / b, throwing DomainError unless b divides a.
Poly exact_quotient(const Poly& a, const Poly& b);

Poly pow(Poly base, std::uint64_t e);
Poly powmod(Poly base, std::uint64_t e, const Poly& mod);

/// Monic gcd. Throws DomainError when both arguments are zero.
Poly gcd(const Poly& a, const Poly& b);

struct ExtGcd {
  Poly g;  // monic
  Poly s;
  Poly t;  // s*a + t*b = g
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

/// |a| = q^deg a, and |0| = 0. Throws DomainError if the value overflows 64 bits.
std::uint64_t norm(const Poly& a);
std::uint64_t checked_pow(std::uint64_t base, int e);

/// Largest k with f^k | a (a != 0, deg f >= 1).
int ord(const Poly& a, const Poly& f);

/// Exact irreducibility over F_q: f | T^{q^n} - T and gcd(f, T^{q^{n/r}} - T) = 1 for each
/// prime r | n. Throws DomainError for constant input.
bool is_irreducible(const Poly& f);

/// Monic irreducible of exactly `degree`; deterministic in `seed`.
Poly random_irreducible(const FieldPtr& field, int degree, std::uint64_t seed);

/// All monic irreducibles of the given degree, in canonical order. Meant for small q^degree.
std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree);

/// {X}_f = min_Y |X - fY| = |X rem f|: any other coset element is (X rem f) + fZ with Z != 0,
/// whose degree is at least deg f > deg (X rem f).
std::uint64_t frac_dist(const Poly& x, const Poly& f);

}  // namespace polybox
