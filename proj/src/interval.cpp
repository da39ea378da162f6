#include "polybox/interval.hpp"

#include "polybox/error.hpp"

namespace polybox {

Interval::Interval(Poly base, int bound) : field_(base.field()), base_(std::move(base)), bound_(bound) {
  if (!field_) throw DomainError("interval base must be bound to a field");
  if (bound_ < 0) throw DomainError("interval bound must be >= 0");
}

Interval::Interval(const FieldPtr& field, int bound) : Interval(Poly(field), bound) {}

std::uint64_t Interval::size() const { return checked_pow(field_->order(), bound_ + 1); }

bool Interval::contains(const Poly& x) const { return (x - base_).degree() <= bound_; }

Poly Interval::offset_at(std::uint64_t k) const {
  const std::uint64_t q = field_->order();
  std::vector<Elem> c;
  c.reserve(bound_ + 1);
  for (int i = 0; i <= bound_ && k > 0; ++i) {
    c.push_back(static_cast<Elem>(k % q));
    k /= q;
  }
  return Poly(field_, std::move(c));
}

std::vector<Poly> Interval::elements() const {
  std::vector<Poly> out;
  out.reserve(size());
  for_each([&](Poly x) { out.push_back(std::move(x)); });
  return out;
}

std::vector<Poly> polys_of_degree(const FieldPtr& field, int degree) {
  if (degree == kNegInf) return {Poly(field)};
  if (degree < 0) throw DomainError("negative degree");
  const std::uint64_t q = field->order();
  const std::uint64_t lower = checked_pow(q, degree);
  std::vector<Poly> out;
  out.reserve(lower * (q - 1));
  // Leading coefficient outermost so the list is grouped by it; lower digits odometer order.
  for (Elem lead = 1; lead < q; ++lead) {
    for (std::uint64_t k = 0; k < lower; ++k) {
      std::vector<Elem> c(degree + 1);
      std::uint64_t rest = k;
      for (int i = 0; i < degree; ++i) {
        c[i] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      c[degree] = lead;
      out.emplace_back(field, std::move(c));
    }
  }
  return out;
}

}  // namespace polybox
