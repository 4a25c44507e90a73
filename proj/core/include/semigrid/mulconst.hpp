// Direct multiplication of a digit vector by a grid constant.  Multiplication
// by u^j shifts coefficients, by -1 negates them componentwise, by an integer
// is repeated addition; a polynomial constant composes these and a final
// normalization brings the result back into the digit bound.

#pragma once

#include "semigrid/digits.hpp"
#include "semigrid/grid.hpp"

namespace semigrid {

// gamma is an integer Laurent polynomial in u; the result is
// normalize(gamma * x) with value gamma(u) * x(u).
LaurentDigits mul_by_poly(const GridSpec& g, const LaurentDigits& gamma, const LaurentDigits& x);

// Same, with the constant given by its (normal-form) digits.
LaurentDigits mul_by_grid_constant(const GridSpec& g, const LaurentDigits& gamma,
                                   const LaurentDigits& x);

}  // namespace semigrid
