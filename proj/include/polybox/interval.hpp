#pragma once

#include <cstdint>
#include <vector>

#include "polybox/poly.hpp"

namespace polybox {

/// The box I = X_0 + {U : deg U <= n} in F_q[T], |I| = q^{n+1}.
///
/// Elements are enumerated in odometer order of the offset U = c_0 + c_1 T + ... + c_n T^n:
/// c_0 varies fastest, each c_i running through F_q in canonical element order. Element k of
/// the enumeration is base + U where (c_0, ..., c_n) are the base-q digits of k.
class Interval {
 public:
  Interval(Poly base, int bound);
  /// Base-0 interval {U : deg U <= bound}.
  Interval(const FieldPtr& field, int bound);

  const Poly& base() const noexcept { return base_; }
  int bound() const noexcept { return bound_; }
  const FieldPtr& field() const noexcept { return field_; }
  /// q^{n+1}; throws DomainError when it does not fit in 64 bits.
  std::uint64_t size() const;

  bool contains(const Poly& x) const;
  /// The offset U with index k (c_0 fastest).
  Poly offset_at(std::uint64_t k) const;
  Poly at(std::uint64_t k) const { return base_ + offset_at(k); }

  template <class Fn>
  void for_each(Fn&& fn) const {
    const std::uint64_t n = size();
    for (std::uint64_t k = 0; k < n; ++k) fn(at(k));
  }
  std::vector<Poly> elements() const;

 private:
  FieldPtr field_;
  Poly base_;
  int bound_;
};

/// All offsets U with deg U exactly `degree` (or U = 0 when degree == kNegInf), in odometer
/// order. Used by degree-stratified searches.
std::vector<Poly> polys_of_degree(const FieldPtr& field, int degree);

}  // namespace polybox
