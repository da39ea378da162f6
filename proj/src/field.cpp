#include "polybox/field.hpp"

#include <map>
#include <sstream>
#include <utility>

#include "polybox/error.hpp"
#include "polybox/poly.hpp"
#include "polybox/rng.hpp"

namespace polybox {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

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

// Conway polynomials, coefficients low to high.
const std::map<std::pair<std::uint32_t, int>, std::vector<Elem>>& conway_table() {
  static const std::map<std::pair<std::uint32_t, int>, std::vector<Elem>> table = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 2}, {2, 4, 1}},    {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 2}, {3, 6, 1}},    {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
  };
  return table;
}

// Arithmetic on digit vectors (length k, base-p digits) modulo a monic modulus; used only
// while building the log tables.
struct DigitArith {
  std::uint32_t p;
  int k;
  const std::vector<Elem>& m;

  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint64_t> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
    for (int d = 2 * k - 2; d >= k; --d) {
      const std::uint64_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < k; ++i) {
        prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
      }
    }
    return {prod.begin(), prod.begin() + k};
  }
  std::uint32_t index(const std::vector<std::uint32_t>& a) const {
    std::uint32_t idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + a[i];
    return idx;
  }
  std::vector<std::uint32_t> digits(std::uint32_t idx) const {
    std::vector<std::uint32_t> d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = idx % p;
      idx /= p;
    }
    return d;
  }
  std::vector<std::uint32_t> pow(std::vector<std::uint32_t> base, std::uint64_t e) const {
    std::vector<std::uint32_t> acc(k, 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
};

}  // namespace

Field::Field(std::uint32_t p, int k, std::vector<Elem> modulus)
    : p_(p), k_(k), q_(0), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  q_ = static_cast<std::uint32_t>(q);
}

FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (p > (1u << 31)) throw DomainError("characteristic too large");
  return FieldPtr(new Field(p, 1, {}));
}

FieldPtr Field::extension(std::uint32_t p, int k, std::uint64_t seed) {
  if (k < 1) throw DomainError("extension degree must be >= 1");
  if (k == 1) return prime(p);
  const auto& table = conway_table();
  if (auto it = table.find({p, k}); it != table.end()) return extension(p, it->second);
  const FieldPtr base = prime(p);
  const Poly m = random_irreducible(base, k, seed);
  return extension(p, std::vector<Elem>(m.coeffs().begin(), m.coeffs().end()));
}

FieldPtr Field::extension(std::uint32_t p, std::vector<Elem> modulus) {
  const FieldPtr base = prime(p);
  const int k = static_cast<int>(modulus.size()) - 1;
  if (k < 1) throw DomainError("extension modulus must have degree >= 1");
  if (k == 1) return base;
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxExtensionOrder) throw DomainError("extension field order exceeds 2^16");
  }
  for (Elem c : modulus) {
    if (c >= p) throw DomainError("modulus coefficient not reduced mod p");
  }
  if (modulus.back() != 1) throw DomainError("extension modulus must be monic");
  if (!is_irreducible(Poly(base, modulus))) {
    throw DomainError("extension modulus is reducible over F_" + std::to_string(p));
  }
  auto field = std::shared_ptr<Field>(new Field(p, k, std::move(modulus)));
  field->build_tables();
  return field;
}

FieldPtr Field::of_order(std::uint64_t q) {
  if (q < 2) throw DomainError("field order must be >= 2");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  int k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  return extension(static_cast<std::uint32_t>(p), k);
}

void Field::build_tables() {
  const DigitArith arith{p_, k_, modulus_};
  const std::uint64_t group = q_ - 1;
  const auto factors = prime_factors(group);
  std::vector<std::uint32_t> gen;
  for (std::uint32_t c = 2; c < q_ && gen.empty(); ++c) {
    const auto cand = arith.digits(c);
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (arith.index(arith.pow(cand, group / r)) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) gen = cand;
  }
  if (gen.empty()) gen = arith.digits(1);  // q == 2 cannot reach here; kept total

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, kNoLog);
  std::vector<std::uint32_t> cur(k_, 0);
  cur[0] = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    const std::uint32_t idx = arith.index(cur);
    exp_[i] = idx;
    log_[idx] = i;
    cur = arith.mul(cur, gen);
  }
  zech_.assign(q_ - 1, kNoLog);
  for (std::uint32_t n = 0; n < q_ - 1; ++n) {
    auto d = arith.digits(exp_[n]);
    d[0] = (d[0] + 1) % p_;
    const std::uint32_t idx = arith.index(d);
    zech_[n] = idx == 0 ? kNoLog : log_[idx];
  }
  minus_one_ = p_ - 1;  // the constant -1 has index p - 1
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  if (k_ == 1) return pow(a, p_ - 2);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  Elem acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

Elem Field::from_integer(std::int64_t n) const noexcept {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) {
    os << " = F_" << p_ << "[u]/(";
    bool first = true;
    for (int i = k_; i >= 0; --i) {
      const Elem c = modulus_[i];
      if (c == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || c != 1) os << c;
      if (i >= 1) os << "u";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace polybox
