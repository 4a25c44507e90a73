#include "semigrid/oracle.hpp"

#include "semigrid/errors.hpp"

namespace semigrid {

namespace {

struct UPoly {
    IPoly m;           // monic defining polynomial
    Rat lo, hi;        // current isolating interval, m(lo)*m(hi) < 0
};

UPoly u_poly(const GridSpec& g) {
    UPoly up;
    up.m.c = g.minpoly;
    up.m.trim();
    if (up.m.is_zero() || up.m.c.back() != 1)
        throw InvalidGrid("grid '" + g.name + "': minpoly must be monic");
    if (!(g.u_lo > 1) || !(g.u_lo < g.u_hi))
        throw InvalidGrid("grid '" + g.name + "': isolating interval must satisfy 1 < lo < hi");
    up.lo = g.u_lo;
    up.hi = g.u_hi;
    return up;
}

// One bisection step keeping the sign change (and with it the root u).
// Returns false when an endpoint evaluation hits the root exactly, in which
// case lo == hi == u afterwards.
bool bisect(UPoly& up) {
    const Rat flo = up.m.eval(up.lo);
    const Rat fhi = up.m.eval(up.hi);
    if (flo == 0) {
        up.hi = up.lo;
        return false;
    }
    if (fhi == 0) {
        up.lo = up.hi;
        return false;
    }
    if ((flo > 0) == (fhi > 0))
        throw InvalidGrid("isolating interval does not bracket a root of minpoly");
    const Rat mid = (up.lo + up.hi) / 2;
    const Rat fmid = up.m.eval(mid);
    if (fmid == 0) {
        up.lo = mid;
        up.hi = mid;
        return false;
    }
    if ((fmid > 0) == (flo > 0))
        up.lo = mid;
    else
        up.hi = mid;
    return true;
}

// Whether r (a nonzero remainder of degree < deg m) still vanishes at u.
// Roots of gcd(r, m) are common roots; the interval isolates u among the
// roots of m, so a Sturm count decides membership.
bool vanishes_at_u(const UPoly& up, const IPoly& r) {
    RPoly g = rpoly_gcd(to_rpoly(r), to_rpoly(up.m));
    if (g.degree() < 1) return false;
    RPoly sf = rpoly_squarefree(g);
    return sturm_count(sf, up.lo, up.hi) >= 1;
}

}  // namespace

Sign sign_at(const GridSpec& g, const LaurentDigits& p) {
    if (p.is_zero()) return Sign::Zero;
    UPoly up = u_poly(g);
    // Clearing negative exponents multiplies by u^{-lo} > 0, preserving sign.
    const int shift = p.lo() < 0 ? -p.lo() : 0;
    IPoly q = ipoly_from_digits(p, shift);
    IPoly r = rem_monic(std::move(q), up.m);
    if (r.is_zero()) return Sign::Zero;
    if (r.degree() >= 1 && vanishes_at_u(up, r)) return Sign::Zero;
    // r(u) != 0 is now certified; refine until the enclosure excludes zero.
    while (true) {
        if (up.lo == up.hi) return sign_of_rat(r.eval(up.lo));
        const RatInterval range = ipoly_range_on_positive(r, up.lo, up.hi);
        if (range.lo > 0) return Sign::Positive;
        if (range.hi < 0) return Sign::Negative;
        bisect(up);
    }
}

RatInterval approx_value(const GridSpec& g, const LaurentDigits& p, const Rat& precision) {
    if (precision <= 0) throw InvalidGrid("precision must be positive");
    if (p.is_zero()) return {0, 0};
    UPoly up = u_poly(g);
    const int shift = p.lo() < 0 ? -p.lo() : 0;
    const IPoly q = ipoly_from_digits(p, shift);
    // p(u) = q(u) / u^shift.
    IPoly denom;  // x^shift
    denom.c.assign(static_cast<std::size_t>(shift) + 1, Int(0));
    denom.c.back() = 1;
    while (true) {
        const RatInterval num = ipoly_range_on_positive(q, up.lo, up.hi);
        const RatInterval den = ipoly_range_on_positive(denom, up.lo, up.hi);
        RatInterval out{num.lo / den.hi, num.hi / den.lo};
        if (num.lo < 0) out.lo = num.lo / den.lo;
        if (num.hi < 0) out.hi = num.hi / den.hi;
        if (out.width() <= precision) return out;
        if (!bisect(up)) {
            const Rat v = q.eval(up.lo) / denom.eval(up.lo);
            return {v, v};
        }
    }
}

bool values_equal(const GridSpec& g, const LaurentDigits& p, const LaurentDigits& q) {
    return sign_at(g, sub_digits(p, q)) == Sign::Zero;
}

}  // namespace semigrid
