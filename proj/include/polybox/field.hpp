#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace polybox {

/// An element of F_q, stored as its index in [0, q).
///
/// For prime fields the index is the residue itself. For F_{p^k} = F_p[u]/(m(u)) the index
/// of c_0 + c_1 u + ... + c_{k-1} u^{k-1} is sum c_i p^i, so integer order on indices is the
/// lexicographic order on (c_{k-1}, ..., c_0). This is the canonical element order used by
/// interval enumeration and every deterministic search.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);

/// Finite field F_q, q = p^k. Immutable once built; share through FieldPtr.
class Field {
 public:
  static FieldPtr prime(std::uint32_t p);
  /// F_{p^k} with the tabulated Conway polynomial when known (k <= 4, p <= 7), otherwise a
  /// seeded random irreducible of degree k.
  static FieldPtr extension(std::uint32_t p, int k, std::uint64_t seed = 0);
  /// F_{p^k} with an explicit monic modulus, coefficients low to high over F_p.
  static FieldPtr extension(std::uint32_t p, std::vector<Elem> modulus);
  /// Field of order q (prime power), using the default extension modulus.
  static FieldPtr of_order(std::uint64_t q);

  std::uint32_t characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  std::uint32_t order() const noexcept { return q_; }
  /// Monic modulus over F_p, low to high; empty for prime fields.
  const std::vector<Elem>& modulus() const noexcept { return modulus_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  Elem add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
      const std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a];
    const std::uint32_t diff = (log_[b] + (q_ - 1) - la) % (q_ - 1);
    const std::uint32_t z = zech_[diff];
    if (z == kNoLog) return 0;
    return exp_[(la + z) % (q_ - 1)];
  }
  Elem neg(Elem a) const noexcept {
    if (a == 0) return 0;
    if (k_ == 1) return p_ - a;
    return mul(a, minus_one_);
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (k_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  /// Throws DomainError on zero.
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// Image of the integer n under Z -> F_q.
  Elem from_integer(std::int64_t n) const noexcept;

  /// Human-readable description, e.g. "F_9 = F_3[u]/(u^2+2u+2)".
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }

  static constexpr std::uint32_t kMaxExtensionOrder = 1u << 16;

 private:
  Field(std::uint32_t p, int k, std::vector<Elem> modulus);
  void build_tables();

  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  std::uint32_t p_;
  int k_;
  std::uint32_t q_;
  std::vector<Elem> modulus_;
  Elem minus_one_ = 0;
  std::vector<Elem> exp_;            // exp_[i] = g^i
  std::vector<std::uint32_t> log_;   // log_[g^i] = i
  std::vector<std::uint32_t> zech_;  // zech_[n] = log(1 + g^n), kNoLog when 1 + g^n = 0
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

}  // namespace polybox
