#pragma once

#include <initializer_list>
#include <vector>

#include "polybox/field.hpp"
#include "polybox/poly.hpp"
#include "polybox/rng.hpp"

namespace polybox::testing {

inline Poly P(const FieldPtr& k, std::initializer_list<Elem> coeffs) {
  return Poly(k, std::vector<Elem>(coeffs));
}

inline Poly random_poly(const FieldPtr& k, int max_degree, Rng& rng) {
  std::vector<Elem> c(max_degree + 1);
  for (auto& x : c) x = static_cast<Elem>(uniform_below(rng, k->order()));
  return Poly(k, std::move(c));
}

inline Poly random_nonzero_poly(const FieldPtr& k, int max_degree, Rng& rng) {
  for (;;) {
    Poly a = random_poly(k, max_degree, rng);
    if (!a.is_zero()) return a;
  }
}

}  // namespace polybox::testing
