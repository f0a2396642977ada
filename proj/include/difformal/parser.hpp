#pragma once

#include <string>
#include <string_view>

#include "difformal/diffpoly.hpp"

namespace difformal {

/// Parse text such as "(y'')^3 - 2*y'*(y'')^2 + 1/16*x*y^(5)" into an expanded DiffPoly.
///
/// Grammar (explicit `*` required):
///   expr   := term (("+"|"-") term)*
///   term   := factor ("*" factor)*
///   factor := ("+"|"-")* primary ("^" uint | "^" "(" uint ")")?
///   primary:= "x" | "y" "'"* | "y^(" uint ")" | int ("/" uint)? | "(" expr ")"
///
/// Throws SyntaxError on malformed input and UnsupportedError on unknown
/// identifiers, decimals and exponents that are not positive integers.
DiffPoly parse_diffpoly(std::string_view src);

/// Deterministic rendering: one group per y-monomial in descending lex order,
/// the x-polynomial coefficient of a group parenthesised when it has several terms.
/// Parameters render as W[..]/V[..]; output without parameters parses back to `p`.
std::string format_diffpoly(const DiffPoly& p);

/// "y", "y'", ..., "y''''", then "y^(5)".
std::string derivative_name(int order);

}  // namespace difformal
