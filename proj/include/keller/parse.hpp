#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "keller/polynomial.hpp"

namespace keller {

// Polynomial text grammar:
//   poly   := term (("+"|"-") term)*
//   term   := coeff ("*"? varpow)* | varpow ("*" varpow)*
//   varpow := ident ("^" nat)?
//   coeff  := int ("/" nat)?
//   ident  := letter (letter|digit|"_")*
// Whitespace is insignificant; a leading unary minus is allowed.

/// Parses `text` into a polynomial; throws parse_error with the offending
/// offset, or error for unknown variables / coefficients outside the ring.
Polynomial parse_polynomial(std::string_view text, const VarsPtr& vars, const Ring& ring);

/// Canonical serialization: terms in GradedReverseLex descending order.
/// `names` overrides the variable names (display aliases); empty = ring names.
std::string format_polynomial(const Polynomial& f, std::span<const std::string> names = {});

std::string format_monomial(const Monomial& m, const VariableSet& vars);

/// Map text format: "[poly_1; poly_2; ...; poly_n]".
std::vector<Polynomial> parse_map_components(std::string_view text, const VarsPtr& vars,
                                             const Ring& ring);
std::string format_map_components(std::span<const Polynomial> comps,
                                  std::span<const std::string> names = {});

} // namespace keller
