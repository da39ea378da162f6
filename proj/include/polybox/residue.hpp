#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polybox/poly.hpp"
#include "polybox/rng.hpp"

namespace polybox {

/// The residue field F_q[T]/(f) for irreducible f. Elements are canonical remainders
/// (Poly of degree < deg f), ordered like interval offsets: index sum c_i q^i.
class ResidueRing {
 public:
  using Elem = Poly;

  /// Throws DomainError unless f is irreducible.
  explicit ResidueRing(Poly f);

  const Poly& modulus() const noexcept { return f_; }
  int degree() const noexcept { return f_.degree(); }
  const FieldPtr& base_field() const noexcept { return f_.field(); }
  /// |f| = q^{deg f}.
  std::uint64_t order() const noexcept { return order_; }
  std::uint32_t characteristic() const noexcept { return f_.field()->characteristic(); }

  Poly reduce(const Poly& a) const { return a % f_; }
  Poly zero() const { return Poly(f_.field()); }
  Poly one() const { return Poly::constant(f_.field(), 1); }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
  Poly sub(const Poly& a, const Poly& b) const { return a - b; }
  Poly neg(const Poly& a) const { return -a; }
  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % f_; }
  /// Throws DomainError on zero.
  Poly inv(const Poly& a) const;
  Poly pow(const Poly& a, std::uint64_t e) const { return powmod(a, e, f_); }
  bool is_zero(const Poly& a) const noexcept { return a.is_zero(); }

  Poly element_at(std::uint64_t k) const;
  std::uint64_t index_of(const Poly& reduced) const noexcept;
  Poly random(Rng& rng) const;

  /// Some square root of a, or nullopt when a is a non-square.
  std::optional<Poly> sqrt(const Poly& a) const;

 private:
  Poly f_;
  std::uint64_t order_;
};

/// Table-backed copy of a residue field for hot loops (point counting). Elements are indices
/// as in ResidueRing::index_of; multiplication and addition go through log / Zech tables.
class GfTable {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  /// Throws DomainError when the field has more than kMaxOrder elements.
  explicit GfTable(const ResidueRing& ring);

  std::uint64_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool is_zero(Elem a) const noexcept { return a == 0; }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[(std::uint64_t{log_[a]} + log_[b]) % (q_ - 1)];
  }
  Elem add(Elem a, Elem b) const noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a];
    const std::uint32_t z = zech_[(log_[b] + (q_ - 1) - la) % (q_ - 1)];
    if (z == kNone) return 0;
    return exp_[(std::uint64_t{la} + z) % (q_ - 1)];
  }
  Elem neg(Elem a) const noexcept { return mul(a, minus_one_); }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem inv(Elem a) const;
  Elem element_at(std::uint64_t k) const noexcept { return static_cast<Elem>(k); }
  Elem random(Rng& rng) const { return static_cast<Elem>(uniform_below(rng, q_)); }

  Elem from_poly(const Poly& reduced) const noexcept;
  Poly to_poly(Elem a) const;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  FieldPtr base_;
  std::uint64_t q_;
  std::uint32_t p_;
  std::uint32_t base_q_;
  Elem minus_one_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

}  // namespace polybox
