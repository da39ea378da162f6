#pragma once

#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "polybox/error.hpp"
#include "polybox/poly.hpp"

/// Exact linear algebra over integral domains, on Eigen dense containers.
///
/// The algorithms are templated on the scalar ring. A ring type plugs in through the ADL hooks
/// ring_is_zero, ring_one_like, ring_exact_div, ring_weight (pivot preference: smaller is
/// better), ring_gcd (normalized) and ring_normalize (multiply by a unit to a canonical
/// associate). Hooks are provided for Poly and for built-in integers.
namespace polybox {

template <class Ring>
using Matrix = Eigen::Matrix<Ring, Eigen::Dynamic, Eigen::Dynamic>;
template <class Ring>
using Vector = Eigen::Matrix<Ring, Eigen::Dynamic, 1>;

// Poly hooks.
inline bool ring_is_zero(const Poly& a) { return a.is_zero(); }
inline Poly ring_one_like(const Poly& a) { return Poly::constant(a.field(), 1); }
inline Poly ring_exact_div(const Poly& a, const Poly& b) { return exact_quotient(a, b); }
inline long ring_weight(const Poly& a) { return a.degree(); }
inline Poly ring_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  return gcd(a, b);
}
inline Poly ring_normalize(const Poly& a) { return a.monic(); }

// Integer hooks, used by tests as an independent check of the generic code paths.
template <std::signed_integral I>
bool ring_is_zero(I a) {
  return a == 0;
}
template <std::signed_integral I>
I ring_one_like(I) {
  return 1;
}
template <std::signed_integral I>
I ring_exact_div(I a, I b) {
  return a / b;
}
template <std::signed_integral I>
long ring_weight(I a) {
  return static_cast<long>(a < 0 ? -a : a);
}
template <std::signed_integral I>
I ring_gcd(I a, I b) {
  return std::gcd(a, b);
}
template <std::signed_integral I>
I ring_normalize(I a) {
  return a < 0 ? -a : a;
}

namespace detail {

template <class Ring>
std::optional<Eigen::Index> lightest_pivot(const Matrix<Ring>& a, Eigen::Index from_row, Eigen::Index col) {
  std::optional<Eigen::Index> best;
  for (Eigen::Index i = from_row; i < a.rows(); ++i) {
    if (ring_is_zero(a(i, col))) continue;
    if (!best || ring_weight(a(i, col)) < ring_weight(a(*best, col))) best = i;
  }
  return best;
}

template <class Ring>
void swap_rows(Matrix<Ring>& a, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  for (Eigen::Index c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant with lightest-pivot row exchanges.
template <class Ring>
Ring bareiss_determinant(Matrix<Ring> a) {
  const Eigen::Index n = a.rows();
  if (n == 0 || n != a.cols()) throw DomainError("determinant of a non-square or empty matrix");
  Ring prev = a(0, 0);
  bool negate = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto piv = detail::lightest_pivot(a, k, k);
    if (!piv) return a(0, 0) - a(0, 0);
    if (*piv != k) {
      detail::swap_rows(a, *piv, k);
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Ring cross = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        a(i, j) = k == 0 ? std::move(cross) : ring_exact_div(cross, prev);
      }
    }
    prev = a(k, k);
  }
  Ring det = a(n - 1, n - 1);
  return negate ? -det : det;
}

/// Laplace expansion along the first row. Exponential; meant as a cross-check for small n.
template <class Ring>
Ring cofactor_determinant(const Matrix<Ring>& a) {
  const Eigen::Index n = a.rows();
  if (n == 0 || n != a.cols()) throw DomainError("determinant of a non-square or empty matrix");
  if (n == 1) return a(0, 0);
  Ring acc = a(0, 0) - a(0, 0);
  for (Eigen::Index c = 0; c < n; ++c) {
    if (ring_is_zero(a(0, c))) continue;
    Matrix<Ring> minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
        if (j != c) minor(i - 1, jj++) = a(i, j);
      }
    }
    const Ring term = a(0, c) * cofactor_determinant<Ring>(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Row echelon form produced by fraction-free elimination with per-row content stripping.
template <class Ring>
struct Echelon {
  Matrix<Ring> rows;                      // echelon form; rows past rank() are zero
  std::vector<Eigen::Index> pivot_cols;   // pivot column of each nonzero row

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols.size()); }
};

template <class Ring>
void strip_content(Matrix<Ring>& a, Eigen::Index row) {
  std::optional<Ring> g;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    if (ring_is_zero(a(row, c))) continue;
    g = g ? ring_gcd(*g, a(row, c)) : ring_gcd(a(row, c), a(row, c) - a(row, c));
  }
  if (!g) return;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    if (!ring_is_zero(a(row, c))) a(row, c) = ring_exact_div(a(row, c), *g);
  }
}

/// Columns are scanned left to right; the pivot in each column is the lightest nonzero entry
/// among the remaining rows.
template <class Ring>
Echelon<Ring> fraction_free_echelon(Matrix<Ring> a) {
  Echelon<Ring> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    const auto piv = detail::lightest_pivot(a, row, col);
    if (!piv) continue;
    detail::swap_rows(a, *piv, row);
    for (Eigen::Index i = row + 1; i < a.rows(); ++i) {
      if (ring_is_zero(a(i, col))) continue;
      const Ring lead = a(row, col);
      const Ring factor = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) = lead * a(i, j) - factor * a(row, j);
      strip_content(a, i);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rows = std::move(a);
  return out;
}

/// A nonzero kernel vector with ring entries, or nullopt when the columns are independent.
/// The first non-pivot column is set free; pivots are solved bottom-up over the fraction
/// field and denominators are cleared as they appear. The result has unit content and its
/// first nonzero entry is normalized.
template <class Ring>
std::optional<Vector<Ring>> fraction_free_kernel(const Matrix<Ring>& a) {
  const Echelon<Ring> e = fraction_free_echelon(a);
  const Eigen::Index cols = a.cols();
  if (e.rank() == cols) return std::nullopt;
  Eigen::Index free_col = 0;
  for (Eigen::Index pc : e.pivot_cols) {
    if (pc != free_col) break;
    ++free_col;
  }
  const Ring zero = a(0, 0) - a(0, 0);
  Vector<Ring> x(cols);
  for (Eigen::Index i = 0; i < cols; ++i) x(i) = zero;
  // a(0,0) may be an unbound zero; take the identity from a nonzero entry.
  const Ring* witness = &a(0, 0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!ring_is_zero(a.data()[i])) {
      witness = &a.data()[i];
      break;
    }
  }
  x(free_col) = ring_one_like(*witness);
  for (Eigen::Index r = e.rank(); r-- > 0;) {
    const Eigen::Index pc = e.pivot_cols[r];
    if (pc > free_col) continue;  // later pivots only involve columns that stay zero
    Ring num = zero;
    for (Eigen::Index j = pc + 1; j < cols; ++j) {
      if (!ring_is_zero(x(j)) && !ring_is_zero(e.rows(r, j))) num = num - e.rows(r, j) * x(j);
    }
    if (ring_is_zero(num)) continue;
    const Ring den = e.rows(r, pc);
    const Ring g = ring_gcd(num, den);
    const Ring scale = ring_exact_div(den, g);
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!ring_is_zero(x(j))) x(j) = x(j) * scale;
    }
    x(pc) = ring_exact_div(num, g);
  }
  std::optional<Ring> content;
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (ring_is_zero(x(j))) continue;
    content = content ? ring_gcd(*content, x(j)) : ring_gcd(x(j), zero);
  }
  Eigen::Index first = 0;
  while (ring_is_zero(x(first))) ++first;
  const Ring lead = ring_exact_div(x(first), *content);
  const Ring unit = ring_exact_div(ring_normalize(lead), lead);
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (!ring_is_zero(x(j))) x(j) = ring_exact_div(x(j), *content) * unit;
  }
  return x;
}

}  // namespace polybox
