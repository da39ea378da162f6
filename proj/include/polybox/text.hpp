#pragma once

#include <string>
#include <string_view>

#include "polybox/bivar.hpp"

namespace polybox {

/// Prime fields: a sum of terms `c*T^e`, `T^e`, `c*T`, `T`, `c` with decimal c reduced mod p,
/// e.g. `T^3+2*T+1`. Extension fields: a JSON array of coefficients low to high, each either an
/// array of F_p digits (low to high in u) or an element index, e.g. `[[0,1],1]` for T + u.
/// Throws ParseError with the byte offset of the first bad character.
Poly parse_poly(std::string_view text, const FieldPtr& field);

/// Canonical text in the same grammar; "0" (or "[]") for zero.
std::string format_poly(const Poly& a);

/// A sum of terms built from factors `(<poly>)`, `X^i`, `Y^j`, `T^e` and integers joined by `*`,
/// e.g. `Y^2-X^3-(T)*X-(1)`.
BivarPoly parse_curve(std::string_view text, const FieldPtr& field);

/// Canonical text: terms sorted by (i, j) descending, coefficients in parentheses unless 1.
std::string format_curve(const BivarPoly& f);

}  // namespace polybox
