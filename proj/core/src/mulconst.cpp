#include "semigrid/mulconst.hpp"

#include "semigrid/normalize.hpp"

namespace semigrid {

LaurentDigits mul_by_poly(const GridSpec& g, const LaurentDigits& gamma, const LaurentDigits& x) {
    return normalize(g, poly_mul_digits(gamma, x));
}

LaurentDigits mul_by_grid_constant(const GridSpec& g, const LaurentDigits& gamma,
                                   const LaurentDigits& x) {
    return mul_by_poly(g, gamma, x);
}

}  // namespace semigrid
