#include "polybox/poly.hpp"

#include <algorithm>
#include <string>

#include "polybox/error.hpp"
#include "polybox/rng.hpp"

namespace polybox {

namespace {

const FieldPtr& common_field(const Poly& a, const Poly& b) {
  if (!a.field()) return b.field();
  if (!b.field()) return a.field();
  if (!same_field(a.field(), b.field())) {
    throw DomainError("operands live over different coefficient fields");
  }
  return a.field();
}

}  // namespace

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  if (!field_ && !c_.empty()) throw DomainError("polynomial coefficients without a field");
  for (Elem c : c_) {
    if (field_ && c >= field_->order()) throw DomainError("coefficient outside F_q");
  }
  trim();
}

Poly Poly::constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, Elem c, int exponent) {
  if (c == 0 || exponent < 0) return Poly(std::move(field));
  std::vector<Elem> v(exponent + 1, 0);
  v.back() = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::variable(FieldPtr field) { return monomial(std::move(field), 1, 1); }

void Poly::trim() noexcept {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Field& Poly::bind(const Poly& o) {
  field_ = common_field(*this, o);
  return *field_;
}

Poly Poly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return scaled(field_->inv(leading()));
}

Poly Poly::scaled(Elem s) const {
  if (s == 0 || is_zero()) return Poly(field_);
  Poly out = *this;
  for (Elem& c : out.c_) c = field_->mul(c, s);
  out.trim();
  return out;
}

Poly Poly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly out(field_);
  out.c_.assign(k, 0);
  out.c_.insert(out.c_.end(), c_.begin(), c_.end());
  return out;
}

Poly Poly::truncated(int k) const {
  if (k >= static_cast<int>(c_.size())) return *this;
  Poly out(field_);
  if (k > 0) out.c_.assign(c_.begin(), c_.begin() + k);
  out.trim();
  return out;
}

Elem Poly::evaluate(Elem t) const noexcept {
  Elem acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_->add(field_->mul(acc, t), *it);
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) {
    if (!field_) field_ = o.field_;
    return *this;
  }
  const Field& f = bind(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f.add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) {
    if (!field_) field_ = o.field_;
    return *this;
  }
  const Field& f = bind(o);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = f.sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator-(const Poly& a) {
  Poly out = a;
  for (Elem& c : out.c_) c = a.field_->neg(c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  const FieldPtr& fp = common_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(fp);
  const Field& f = *fp;
  const std::size_t n = a.c_.size(), m = b.c_.size();
  Poly out(fp);
  if (f.is_prime_field()) {
    const std::uint64_t p = f.characteristic();
    std::vector<std::uint64_t> acc(n + m - 1, 0);
    // Partial sums stay below 2^63 for p < 2^31 as long as we fold every 2 terms.
    const bool fold = p > (1u << 16);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t ai = a.c_[i];
      if (ai == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        acc[i + j] += ai * b.c_[j];
        if (fold) acc[i + j] %= p;
      }
    }
    out.c_.resize(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out.c_[i] = static_cast<Elem>(acc[i] % p);
  } else {
    out.c_.assign(n + m - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        out.c_[i + j] = f.add(out.c_[i + j], f.mul(a.c_[i], b.c_[j]));
      }
    }
  }
  out.trim();
  return out;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) noexcept {
  if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
  }
  return std::strong_ordering::equal;
}

DivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const FieldPtr& fp = common_field(a, b);
  const Field& f = *fp;
  if (a.degree() < b.degree()) return {Poly(fp), Poly(fp, std::vector<Elem>(a.coeffs().begin(), a.coeffs().end()))};
  std::vector<Elem> r(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const int db = b.degree();
  const Elem lead_inv = f.inv(b.leading());
  std::vector<Elem> quot(r.size() - bc.size() + 1, 0);
  for (int d = static_cast<int>(r.size()) - 1; d >= db; --d) {
    const Elem c = r[d];
    if (c == 0) continue;
    const Elem factor = f.mul(c, lead_inv);
    quot[d - db] = factor;
    for (int i = 0; i <= db; ++i) r[d - db + i] = f.sub(r[d - db + i], f.mul(factor, bc[i]));
  }
  r.resize(db);
  return {Poly(fp, std::move(quot)), Poly(fp, std::move(r))};
}

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

Poly pow(Poly base, std::uint64_t e) {
  Poly acc = Poly::constant(base.field(), 1);
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return acc;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& mod) {
  base = base % mod;
  Poly acc = Poly::constant(mod.field(), 1) % mod;
  while (e > 0) {
    if (e & 1) acc = (acc * base) % mod;
    e >>= 1;
    if (e > 0) base = (base * base) % mod;
  }
  return acc;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  const FieldPtr& fp = common_field(a, b);
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(fp, 1), s1(fp);
  Poly t0(fp), t1 = Poly::constant(fp, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Elem li = fp->inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

std::uint64_t checked_pow(std::uint64_t base, int e) {
  std::uint64_t acc = 1;
  for (int i = 0; i < e; ++i) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / base) {
      throw DomainError("q^" + std::to_string(e) + " overflows 64 bits");
    }
    acc *= base;
  }
  return acc;
}

std::uint64_t norm(const Poly& a) {
  if (a.is_zero()) return 0;
  return checked_pow(a.field()->order(), a.degree());
}

int ord(const Poly& a, const Poly& f) {
  if (a.is_zero()) throw DomainError("ord of the zero polynomial is infinite");
  if (f.degree() < 1) throw DomainError("ord requires a non-constant modulus");
  int k = 0;
  Poly cur = a;
  for (;;) {
    auto [q, r] = divrem(cur, f);
    if (!r.is_zero()) return k;
    cur = std::move(q);
    ++k;
  }
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw DomainError("irreducibility of a constant is undefined");
  const int n = f.degree();
  if (n == 1) return true;
  const Poly m = f.monic();
  const Poly t = Poly::variable(m.field());
  const std::uint64_t q = m.field()->order();
  // frob[j] = T^{q^j} mod m
  std::vector<Poly> frob{t % m};
  for (int j = 1; j <= n; ++j) frob.push_back(powmod(frob.back(), q, m));
  if (frob[n] != frob[0]) return false;
  int rest = n;
  for (int r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    const Poly diff = frob[n / r] - t;
    if (diff.is_zero() || gcd(m, diff).degree() > 0) return false;
  }
  return true;
}

Poly random_irreducible(const FieldPtr& field, int degree, std::uint64_t seed) {
  if (degree < 1) throw DomainError("irreducible degree must be >= 1");
  Rng rng(seed);
  const std::uint64_t q = field->order();
  for (;;) {
    std::vector<Elem> c(degree + 1);
    for (int i = 0; i < degree; ++i) c[i] = static_cast<Elem>(uniform_below(rng, q));
    c[degree] = 1;
    Poly cand(field, std::move(c));
    if (is_irreducible(cand)) return cand;
  }
}

std::vector<Poly> monic_irreducibles(const FieldPtr& field, int degree) {
  if (degree < 1) throw DomainError("irreducible degree must be >= 1");
  const std::uint64_t q = field->order();
  const std::uint64_t count = checked_pow(q, degree);
  std::vector<Poly> out;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> c(degree + 1);
    std::uint64_t rest = idx;
    for (int i = 0; i < degree; ++i) {
      c[i] = static_cast<Elem>(rest % q);
      rest /= q;
    }
    c[degree] = 1;
    Poly cand(field, std::move(c));
    if (is_irreducible(cand)) out.push_back(std::move(cand));
  }
  return out;
}

std::uint64_t frac_dist(const Poly& x, const Poly& f) { return norm(x % f); }

}  // namespace polybox
