#include "polybox/residue.hpp"

#include "polybox/error.hpp"

namespace polybox {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

ResidueRing::ResidueRing(Poly f) : f_(std::move(f)), order_(0) {
  if (!f_.field()) throw DomainError("modulus must be bound to a field");
  if (f_.degree() < 1 || !is_irreducible(f_)) {
    throw DomainError("residue ring modulus must be irreducible");
  }
  order_ = norm(f_);
}

Poly ResidueRing::inv(const Poly& a) const {
  const Poly r = reduce(a);
  if (r.is_zero()) throw DomainError("inverse of zero modulo f");
  return ext_gcd(r, f_).s % f_;
}

Poly ResidueRing::element_at(std::uint64_t k) const {
  const std::uint64_t q = f_.field()->order();
  std::vector<polybox::Elem> c;
  for (int i = 0; i < degree() && k > 0; ++i) {
    c.push_back(static_cast<polybox::Elem>(k % q));
    k /= q;
  }
  return Poly(f_.field(), std::move(c));
}

std::uint64_t ResidueRing::index_of(const Poly& reduced) const noexcept {
  const std::uint64_t q = f_.field()->order();
  std::uint64_t idx = 0;
  const auto c = reduced.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) idx = idx * q + c[i];
  return idx;
}

Poly ResidueRing::random(Rng& rng) const {
  const std::uint64_t q = f_.field()->order();
  std::vector<polybox::Elem> c(degree());
  for (auto& x : c) x = static_cast<polybox::Elem>(uniform_below(rng, q));
  return Poly(f_.field(), std::move(c));
}

std::optional<Poly> ResidueRing::sqrt(const Poly& a_in) const {
  const Poly a = reduce(a_in);
  if (a.is_zero()) return a;
  const std::uint64_t qm = order_;
  if (characteristic() == 2) return pow(a, qm / 2);  // squaring is a bijection
  const Poly one_ = one();
  if (pow(a, (qm - 1) / 2) != one_) return std::nullopt;
  // Tonelli-Shanks.
  std::uint64_t odd = qm - 1;
  int s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  Poly z;
  const Poly minus_one = neg(one_);
  for (std::uint64_t k = 2;; ++k) {
    z = element_at(k);
    if (pow(z, (qm - 1) / 2) == minus_one) break;
  }
  Poly c = pow(z, odd);
  Poly x = pow(a, (odd + 1) / 2);
  Poly t = pow(a, odd);
  int m = s;
  while (t != one_) {
    int i = 0;
    Poly tt = t;
    while (tt != one_) {
      tt = mul(tt, tt);
      ++i;
    }
    Poly b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
    x = mul(x, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  return x;
}

GfTable::GfTable(const ResidueRing& ring)
    : base_(ring.base_field()),
      q_(ring.order()),
      p_(ring.characteristic()),
      base_q_(ring.base_field()->order()) {
  if (q_ > kMaxOrder) throw DomainError("residue field too large for table arithmetic (> 2^20)");
  const auto factors = prime_factors(q_ - 1);
  Poly gen;
  if (q_ == 2) {
    gen = ring.one();
  } else {
    for (std::uint64_t k = 2; k < q_; ++k) {
      const Poly cand = ring.element_at(k);
      bool primitive = true;
      for (std::uint64_t r : factors) {
        if (ring.pow(cand, (q_ - 1) / r).is_one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = cand;
        break;
      }
    }
  }
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, kNone);
  Poly cur = ring.one();
  for (std::uint64_t i = 0; i + 1 < q_; ++i) {
    const auto idx = static_cast<Elem>(ring.index_of(cur));
    exp_[i] = idx;
    log_[idx] = static_cast<std::uint32_t>(i);
    cur = ring.mul(cur, gen);
  }
  zech_.assign(q_ - 1, kNone);
  const Poly one_poly = ring.one();
  for (std::uint64_t n = 0; n + 1 < q_; ++n) {
    const Poly s = to_poly(exp_[n]) + one_poly;
    const Elem idx = from_poly(s);
    zech_[n] = idx == 0 ? kNone : log_[idx];
  }
  minus_one_ = from_poly(ring.neg(one_poly));
}

GfTable::Elem GfTable::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in residue field");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GfTable::Elem GfTable::from_poly(const Poly& reduced) const noexcept {
  std::uint64_t idx = 0;
  const auto c = reduced.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) idx = idx * base_q_ + c[i];
  return static_cast<Elem>(idx);
}

Poly GfTable::to_poly(Elem a) const {
  std::vector<polybox::Elem> c;
  std::uint64_t k = a;
  while (k > 0) {
    c.push_back(static_cast<polybox::Elem>(k % base_q_));
    k /= base_q_;
  }
  return Poly(base_, std::move(c));
}

}  // namespace polybox
