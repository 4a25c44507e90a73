#include "doctest.h"

#include <random>

#include "semigrid/grid.hpp"
#include "semigrid/mulconst.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/oracle.hpp"
#include "semigrid/sign.hpp"

using namespace semigrid;

TEST_CASE("mul_by_poly worked examples") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const LaurentDigits x = parse_digits("{1:2,0:-1,-2:3}");
    CHECK(mul_by_poly(g, LaurentDigits::integer(1), x) == normalize(g, x));
    // p2 * 1 = sqrt(2).
    CHECK(mul_by_poly(g, *g.p2, LaurentDigits::integer(1)) == parse_digits("{0:2,-1:-2}"));
    // Applying p2 twice to 1 is 2, up to representation.
    const LaurentDigits twice = mul_by_poly(g, *g.p2, mul_by_poly(g, *g.p2, LaurentDigits::integer(1)));
    CHECK(equal(g, twice, parse_digits("{0:2}")));
}

TEST_CASE("mul_by_grid_constant worked examples") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK(mul_by_grid_constant(g, const_digits(g, ConstInvB{}), LaurentDigits::integer(1)) ==
          parse_digits("{-1:2,-2:-1}"));
    CHECK(mul_by_grid_constant(g, LaurentDigits{}, parse_digits("{3:2,-4:1}")).is_zero());

    // (1/2) * sqrt(3) = sqrt(3)/2 = 1 - u^{-1} in the sqrt3 grid.
    const GridSpec g3 = make_grid(SqrtB2m1Half{2});
    const LaurentDigits half = const_digits(g3, ConstHalf{});
    const LaurentDigits r = mul_by_grid_constant(g3, half, *g3.p2);
    CHECK(r == parse_digits("{0:1,-1:-1}"));
}

TEST_CASE("bilinearity spot-checks") {
    std::mt19937_64 rng(31337);
    const GridSpec g = make_grid(Sqrt2Half{});
    std::uniform_int_distribution<int> exp(-5, 5);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int i = 0; i < 60; ++i) {
        LaurentDigits gamma, x, y;
        for (int j = 0; j < 3; ++j) {
            gamma.set(exp(rng), coeff(rng));
            x.set(exp(rng), coeff(rng));
            y.set(exp(rng), coeff(rng));
        }
        const LaurentDigits lhs = mul_by_poly(g, gamma, add_digits(x, y));
        const LaurentDigits rhs =
            normalize(g, add_digits(mul_by_poly(g, gamma, x), mul_by_poly(g, gamma, y)));
        CHECK(equal(g, lhs, rhs));
    }
}

TEST_CASE("consistency with the relational checker") {
    std::mt19937_64 rng(4242);
    for (const GridSpec& g : shipped_grids()) {
        INFO(g.name);
        // Small constant so the combined digit stream stays in cap range.
        LaurentDigits gamma;
        gamma.set(0, 2);
        gamma.set(-1, -1);
        auto checker = mulconst_checker_automaton(g, gamma, LaurentDigits::integer(1));
        const auto d = static_cast<std::int64_t>(g.digit_bound);
        std::uniform_int_distribution<std::int64_t> digit(-d, d);
        std::uniform_int_distribution<int> exp(-4, 4);
        for (int i = 0; i < 30; ++i) {
            LaurentDigits x;
            for (int j = 0; j < 4; ++j) x.set(exp(rng), digit(rng));
            const LaurentDigits y = mul_by_poly(g, gamma, x);
            CHECK(checker->run(convolve({x, y})) == SyncDFA::kAccept);
            CHECK(checker->run(convolve({x, add_digits(y, LaurentDigits::integer(1))})) ==
                  SyncDFA::kReject);
        }
    }
}
