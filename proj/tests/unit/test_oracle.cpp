#include "doctest.h"

#include <random>

#include "semigrid/grid.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/oracle.hpp"

using namespace semigrid;

namespace {

LaurentDigits p3_digits(const GridSpec& g) {
    LaurentDigits d;
    for (std::size_t i = 0; i < g.p3.size(); ++i) d.set(-static_cast<int>(i), g.p3[i]);
    return d;
}

}  // namespace

TEST_CASE("sign_at on defining identities") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK(sign_at(g, p3_digits(g)) == Sign::Zero);
    CHECK(sign_at(g, g.p4) == Sign::Zero);
    CHECK(sign_at(g, parse_digits("{0:5}")) == Sign::Positive);
    // sqrt(2) - 1/2 > 0
    CHECK(sign_at(g, sub_digits(*g.p2, *g.p1)) == Sign::Positive);
    CHECK(sign_at(g, LaurentDigits{}) == Sign::Zero);
    CHECK(sign_at(g, negate_digits(parse_digits("{-5:1}"))) == Sign::Negative);
}

TEST_CASE("approx_value encloses within the requested width") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const Rat prec(1, 1000000);

    const RatInterval one = approx_value(g, LaurentDigits::integer(1), prec);
    CHECK(one.lo <= 1);
    CHECK(one.hi >= 1);
    CHECK(one.width() <= prec);

    // p2 has value sqrt(2) = 1.41421356...
    const RatInterval c = approx_value(g, *g.p2, prec);
    CHECK(c.lo <= Rat(1414214, 1000000));
    CHECK(c.hi >= Rat(1414213, 1000000));
    CHECK(c.width() <= prec);

    const RatInterval zero = approx_value(g, LaurentDigits{}, prec);
    CHECK(zero.lo == 0);
    CHECK(zero.hi == 0);
}

TEST_CASE("sign_at agrees with the interval sign") {
    std::mt19937_64 rng(11);
    const GridSpec g = make_grid(Sqrt2Half{});
    std::uniform_int_distribution<int> exp(-6, 6);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int i = 0; i < 200; ++i) {
        LaurentDigits d;
        for (int j = 0; j < 4; ++j) d.set(exp(rng), coeff(rng));
        const Sign s = sign_at(g, d);
        const RatInterval v = approx_value(g, d, Rat(1, 1000000000));
        if (!v.contains_zero()) {
            CHECK(s == (v.lo > 0 ? Sign::Positive : Sign::Negative));
        } else {
            CHECK(s == Sign::Zero);
        }
    }
}

TEST_CASE("sign_at is invariant under normalization") {
    std::mt19937_64 rng(13);
    for (const GridSpec& g : {make_grid(Sqrt2Half{}), make_grid(Cbrt7{})}) {
        std::uniform_int_distribution<int> exp(-8, 8);
        const int mag = static_cast<int>(3 * g.digit_bound);
        std::uniform_int_distribution<int> coeff(-mag, mag);
        for (int i = 0; i < 100; ++i) {
            LaurentDigits d;
            for (int j = 0; j < 5; ++j) d.set(exp(rng), coeff(rng));
            CHECK(sign_at(g, d) == sign_at(g, normalize(g, d)));
        }
    }
}

TEST_CASE("values_equal distinguishes representations of the same number") {
    const GridSpec g = make_grid(Sqrt2Half{});
    // 5 and its normal form are structurally different but value-equal.
    CHECK(values_equal(g, parse_digits("{0:5}"), parse_digits("{1:1,0:1,-1:2}")));
    CHECK_FALSE(values_equal(g, parse_digits("{0:5}"), parse_digits("{0:4}")));
}
