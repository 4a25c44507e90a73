// Reduction to normal form: repeatedly add or subtract shifted copies of the
// zero-valued polynomial p4 until every digit satisfies |a_k| <= D.  The value
// at u never changes; the coefficient 1-norm strictly decreases each step.

#pragma once

#include "semigrid/digits.hpp"
#include "semigrid/grid.hpp"

namespace semigrid {

struct NormalizeTrace {
    std::size_t steps = 0;
    std::vector<Int> norms;  // 1-norm before each step, then the final norm
};

LaurentDigits normalize(const GridSpec& g, const LaurentDigits& p,
                        NormalizeTrace* trace = nullptr);

bool is_normal_form(const GridSpec& g, const LaurentDigits& p);

}  // namespace semigrid
