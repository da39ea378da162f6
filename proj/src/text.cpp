#include "polybox/text.hpp"

#include <cctype>
#include <limits>

#include "polybox/error.hpp"

namespace polybox {

namespace {

constexpr int kMaxExponent = 1 << 16;

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t base) : s_(text), base_(base) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(pos_ < s_.size() ? what : what + " (unexpected end of input)", base_ + pos_);
  }

  std::uint64_t integer() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an integer");
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::uint64_t digit = static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail("integer does not fit in 64 bits");
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  int exponent() {
    if (!accept('^')) return 1;
    const std::size_t at = pos_;
    const std::uint64_t e = integer();
    if (e > kMaxExponent) {
      pos_ = at;
      fail("exponent too large");
    }
    return static_cast<int>(e);
  }

 private:
  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

Elem integer_in_field(std::uint64_t v, const Field& k) {
  return k.from_integer(static_cast<std::int64_t>(v % k.characteristic()));
}

// Prime-field polynomial grammar, or JSON array for extension fields. Consumes as much of the
// cursor as forms a polynomial; the caller checks for trailing input.
Poly parse_poly_at(Cursor& c, const FieldPtr& field) {
  const Field& k = *field;
  if (!k.is_prime_field()) {
    c.expect('[');
    std::vector<Elem> coeffs;
    if (!c.accept(']')) {
      do {
        if (c.accept('[')) {
          Elem e = 0;
          Elem place = 1;
          if (!c.accept(']')) {
            int digits = 0;
            do {
              const std::size_t at = c.pos();
              const std::uint64_t d = c.integer();
              if (d >= k.characteristic() || ++digits > k.degree()) {
                c.set_pos(at);
                c.fail("coefficient digit outside F_p or too many digits");
              }
              e += static_cast<Elem>(d) * place;
              place *= k.characteristic();
            } while (c.accept(','));
            c.expect(']');
          }
          coeffs.push_back(e);
        } else {
          const std::size_t at = c.pos();
          const std::uint64_t idx = c.integer();
          if (idx >= k.order()) {
            c.set_pos(at);
            c.fail("element index outside F_q");
          }
          coeffs.push_back(static_cast<Elem>(idx));
        }
      } while (c.accept(','));
      c.expect(']');
    }
    return Poly(field, std::move(coeffs));
  }
  Poly acc(field);
  bool first = true;
  for (;;) {
    bool negative = false;
    if (c.accept('-')) {
      negative = true;
    } else if (!c.accept('+') && !first) {
      break;
    }
    first = false;
    Elem coef = 1;
    int e = 0;
    const char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      coef = integer_in_field(c.integer(), k);
      if (c.accept('*')) {
        if (!c.accept('T')) c.fail("expected 'T'");
        e = c.exponent();
      }
    } else if (c.accept('T')) {
      e = c.exponent();
    } else {
      c.fail("expected a term");
    }
    const Poly term = Poly::monomial(field, coef, e);
    acc = negative ? acc - term : acc + term;
  }
  return acc;
}

std::string digits_json(Elem e, const Field& k) {
  std::string out = "[";
  for (int i = 0; i < k.degree(); ++i) {
    if (i) out += ",";
    out += std::to_string(e % k.characteristic());
    e /= k.characteristic();
  }
  return out + "]";
}

}  // namespace

Poly parse_poly(std::string_view text, const FieldPtr& field) {
  Cursor c(text, 0);
  if (c.done()) c.fail("empty polynomial");
  const Poly out = parse_poly_at(c, field);
  if (!c.done()) c.fail("unexpected character");
  return out;
}

std::string format_poly(const Poly& a) {
  if (!a.field()) return "0";
  const Field& k = *a.field();
  if (!k.is_prime_field()) {
    std::string out = "[";
    for (int i = 0; i <= a.degree(); ++i) {
      if (i) out += ",";
      out += digits_json(a.coeff(i), k);
    }
    return out + "]";
  }
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    const Elem c = a.coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "T";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

BivarPoly parse_curve(std::string_view text, const FieldPtr& field) {
  Cursor c(text, 0);
  if (c.done()) c.fail("empty curve");
  BivarPoly out(field);
  bool first = true;
  while (!c.done()) {
    bool negative = false;
    if (c.accept('-')) {
      negative = true;
    } else if (!c.accept('+') && !first) {
      c.fail("expected '+' or '-'");
    }
    first = false;
    Poly coef = Poly::constant(field, 1);
    int i = 0;
    int j = 0;
    do {
      const char ch = c.peek();
      if (c.accept('(')) {
        coef = coef * parse_poly_at(c, field);
        c.expect(')');
      } else if (c.accept('X')) {
        i += c.exponent();
      } else if (c.accept('Y')) {
        j += c.exponent();
      } else if (c.accept('T')) {
        coef = coef.shifted(c.exponent());
      } else if (std::isdigit(static_cast<unsigned char>(ch)) && field->is_prime_field()) {
        coef = coef.scaled(integer_in_field(c.integer(), *field));
      } else {
        c.fail("expected a factor");
      }
    } while (c.accept('*'));
    out.add_term(i, j, negative ? -coef : coef);
  }
  return out;
}

std::string format_curve(const BivarPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += "+";
    std::string mono;
    if (m.i > 0) mono += m.i == 1 ? "X" : "X^" + std::to_string(m.i);
    if (m.j > 0) mono += std::string(mono.empty() ? "" : "*") + (m.j == 1 ? "Y" : "Y^" + std::to_string(m.j));
    if (c.is_one() && !mono.empty()) {
      out += mono;
      continue;
    }
    out += "(" + format_poly(c) + ")";
    if (!mono.empty()) out += "*" + mono;
  }
  return out;
}

}  // namespace polybox
