// Independent exact ground truth: sign and interval evaluation of digit
// vectors at the algebraic base u.  All arithmetic is arbitrary-precision
// rational; zero detection goes through polynomial remainders modulo the
// grid's defining polynomial, never through "the interval got small".

#pragma once

#include "semigrid/digits.hpp"
#include "semigrid/grid.hpp"
#include "semigrid/polynomial.hpp"

namespace semigrid {

// Exact sign of p(u).
Sign sign_at(const GridSpec& g, const LaurentDigits& p);

// Rational enclosure of p(u) with width <= precision (precision > 0).
RatInterval approx_value(const GridSpec& g, const LaurentDigits& p, const Rat& precision);

// sign_at(sub_digits(p, q)) == Zero, i.e. p(u) == q(u) exactly.
bool values_equal(const GridSpec& g, const LaurentDigits& p, const LaurentDigits& q);

}  // namespace semigrid
