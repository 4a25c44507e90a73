// Dense univariate polynomials over Int/Rat (ascending coefficients), with
// the pieces the exact oracle needs: monic remainder, gcd, squarefree part,
// Sturm root counting and exact interval evaluation.

#pragma once

#include <vector>

#include "semigrid/digits.hpp"
#include "semigrid/numeric.hpp"

namespace semigrid {

struct IPoly {
    std::vector<Int> c;  // c[i] is the coefficient of x^i

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Int eval_int(const Int& x) const;
    Rat eval(const Rat& x) const;
};

struct RPoly {
    std::vector<Rat> c;

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rat eval(const Rat& x) const;
};

// p * x^shift as an ordinary polynomial; shift must clear all negative exponents.
IPoly ipoly_from_digits(const LaurentDigits& p, int shift);

// Remainder of a by a monic integer polynomial m (stays in Int coefficients).
IPoly rem_monic(IPoly a, const IPoly& m);

RPoly to_rpoly(const IPoly& p);
RPoly rpoly_neg_rem(const RPoly& a, const RPoly& b);  // -(a mod b), as Sturm needs
RPoly rpoly_rem(const RPoly& a, const RPoly& b);
RPoly rpoly_gcd(RPoly a, RPoly b);  // monic gcd
RPoly rpoly_derivative(const RPoly& p);
RPoly rpoly_squarefree(const RPoly& p);

// Number of distinct real roots of squarefree p in (lo, hi].
int sturm_count(const RPoly& squarefree_p, const Rat& lo, const Rat& hi);

// Exact bounds of p over [lo, hi] with 0 < lo <= hi (termwise on monomials,
// which are monotone on positive intervals).
struct RatInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
};
RatInterval ipoly_range_on_positive(const IPoly& p, const Rat& lo, const Rat& hi);

}  // namespace semigrid
