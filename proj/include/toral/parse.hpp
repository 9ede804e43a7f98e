#pragma once

#include <cstddef>
#include <string_view>

#include "toral/multipoly.hpp"

namespace toral {

/// Parses a polynomial expression.
///
/// Grammar: variables z1..zN (and the aliases z, w for z1, z2); literals are
/// integers, fractions a/b, exact decimals and the imaginary unit i; the
/// operators are + - * and ^ with a nonnegative integer exponent. Implicit
/// multiplication is rejected. The variable count is max(min_vars, highest
/// index used).
MultiPoly parse(std::string_view text, std::size_t min_vars = 2);

/// Parses a Gaussian-rational constant (same literal grammar, no variables).
GaussianRational parse_scalar(std::string_view text);

}  // namespace toral
