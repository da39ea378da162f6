#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "polybox/error.hpp"
#include "polybox/rng.hpp"

/// Dense univariate polynomials over a finite field K, where K is any field-ops type with
/// the interface of ResidueRing / GfTable (zero, one, add, sub, mul, neg, inv, is_zero, order,
/// characteristic, element_at, random). Coefficients are stored low to high, trimmed.
namespace polybox::upoly {

template <class K>
using Coeffs = std::vector<typename K::Elem>;

template <class K>
void trim(const K& k, Coeffs<K>& a) {
  while (!a.empty() && k.is_zero(a.back())) a.pop_back();
}

template <class K>
int degree(const Coeffs<K>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class K>
typename K::Elem evaluate(const K& k, const Coeffs<K>& a, const typename K::Elem& x) {
  auto acc = k.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = k.add(k.mul(acc, x), *it);
  return acc;
}

template <class K>
Coeffs<K> add(const K& k, Coeffs<K> a, const Coeffs<K>& b) {
  if (a.size() < b.size()) a.resize(b.size(), k.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = k.add(a[i], b[i]);
  trim(k, a);
  return a;
}

template <class K>
Coeffs<K> sub(const K& k, Coeffs<K> a, const Coeffs<K>& b) {
  if (a.size() < b.size()) a.resize(b.size(), k.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = k.sub(a[i], b[i]);
  trim(k, a);
  return a;
}

template <class K>
Coeffs<K> mul(const K& k, const Coeffs<K>& a, const Coeffs<K>& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs<K> out(a.size() + b.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (k.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
  }
  trim(k, out);
  return out;
}

template <class K>
Coeffs<K> monic(const K& k, Coeffs<K> a) {
  if (a.empty()) return a;
  const auto li = k.inv(a.back());
  for (auto& c : a) c = k.mul(c, li);
  return a;
}

/// (quotient, remainder); b must be nonzero.
template <class K>
std::pair<Coeffs<K>, Coeffs<K>> divrem(const K& k, Coeffs<K> a, const Coeffs<K>& b) {
  if (b.empty()) throw DomainError("univariate division by zero");
  if (a.size() < b.size()) return {{}, std::move(a)};
  const auto li = k.inv(b.back());
  const std::size_t db = b.size() - 1;
  Coeffs<K> q(a.size() - db, k.zero());
  for (std::size_t d = a.size(); d-- > db;) {
    if (k.is_zero(a[d])) continue;
    const auto factor = k.mul(a[d], li);
    q[d - db] = factor;
    for (std::size_t i = 0; i <= db; ++i) a[d - db + i] = k.sub(a[d - db + i], k.mul(factor, b[i]));
  }
  a.resize(db);
  trim(k, a);
  trim(k, q);
  return {std::move(q), std::move(a)};
}

template <class K>
Coeffs<K> rem(const K& k, Coeffs<K> a, const Coeffs<K>& b) {
  return divrem(k, std::move(a), b).second;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Coeffs<K> gcd(const K& k, Coeffs<K> a, Coeffs<K> b) {
  while (!b.empty()) {
    Coeffs<K> r = rem(k, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, std::move(a));
}

template <class K>
Coeffs<K> powmod(const K& k, Coeffs<K> base, std::uint64_t e, const Coeffs<K>& mod) {
  base = rem(k, std::move(base), mod);
  Coeffs<K> acc = rem(k, Coeffs<K>{k.one()}, mod);
  while (e > 0) {
    if (e & 1) acc = rem(k, mul(k, acc, base), mod);
    e >>= 1;
    if (e > 0) base = rem(k, mul(k, base, base), mod);
  }
  return acc;
}

/// gcd(g, y^Q - y): the product of the distinct linear factors of g.
template <class K>
Coeffs<K> split_part(const K& k, const Coeffs<K>& g) {
  const Coeffs<K> y{k.zero(), k.one()};
  const Coeffs<K> frob = powmod(k, y, k.order(), g);
  return gcd(k, g, sub(k, frob, y));
}

/// Number of distinct roots of g in K; |K| for the zero polynomial.
template <class K>
std::uint64_t distinct_root_count(const K& k, Coeffs<K> g) {
  trim(k, g);
  if (g.empty()) return k.order();
  if (g.size() == 1) return 0;
  if (g.size() == 2) return 1;
  return static_cast<std::uint64_t>(degree<K>(split_part(k, g)));
}

namespace detail {

template <class K>
void equal_degree_split(const K& k, const Coeffs<K>& h, Rng& rng, Coeffs<K>& roots) {
  if (h.size() == 2) {
    roots.push_back(k.neg(k.mul(h[0], k.inv(h[1]))));
    return;
  }
  const std::uint64_t q = k.order();
  for (;;) {
    const Coeffs<K> lin{k.random(rng), k.one()};
    Coeffs<K> w;
    if (k.characteristic() == 2) {
      // Absolute trace of (delta * y): sum_{i < log2 q} (delta y)^{2^i} mod h.
      const Coeffs<K> dy{k.zero(), k.random(rng)};
      Coeffs<K> term = rem(k, dy, h);
      w = term;
      for (std::uint64_t e = 2; e < q; e *= 2) {
        term = rem(k, mul(k, term, term), h);
        w = add(k, std::move(w), term);
      }
    } else {
      w = sub(k, powmod(k, lin, (q - 1) / 2, h), Coeffs<K>{k.one()});
    }
    Coeffs<K> d = gcd(k, h, w);
    if (d.size() > 1 && d.size() < h.size()) {
      equal_degree_split(k, d, rng, roots);
      equal_degree_split(k, divrem(k, h, d).first, rng, roots);
      return;
    }
  }
}

}  // namespace detail

/// Distinct roots of a nonzero g in K (Cantor-Zassenhaus; exhaustive scan for tiny K).
/// Order of the returned roots is unspecified.
template <class K>
Coeffs<K> roots(const K& k, Coeffs<K> g, Rng& rng) {
  trim(k, g);
  if (g.empty()) throw DomainError("roots of the zero polynomial");
  Coeffs<K> out;
  if (g.size() == 1) return out;
  if (k.order() <= 64) {
    for (std::uint64_t i = 0; i < k.order(); ++i) {
      const auto x = k.element_at(i);
      if (k.is_zero(evaluate(k, g, x))) out.push_back(x);
    }
    return out;
  }
  const Coeffs<K> h = g.size() == 2 ? monic(k, g) : split_part(k, g);
  if (h.size() <= 1) return out;
  detail::equal_degree_split(k, h, rng, out);
  return out;
}

}  // namespace polybox::upoly
