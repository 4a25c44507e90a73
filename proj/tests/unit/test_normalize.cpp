#include "doctest.h"

#include <random>

#include "semigrid/grid.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/oracle.hpp"

using namespace semigrid;

TEST_CASE("normalize worked examples") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK(normalize(g, LaurentDigits{}).is_zero());
    CHECK(normalize(g, parse_digits("{0:5}")) == parse_digits("{1:1,0:1,-1:2}"));
    const LaurentDigits in_bound = parse_digits("{0:2,-1:-2}");
    CHECK(normalize(g, in_bound) == in_bound);
}

TEST_CASE("normalize on every shipped grid") {
    std::mt19937_64 rng(101);
    for (const GridSpec& g : shipped_grids()) {
        INFO(g.name);
        std::uniform_int_distribution<int> exp(-10, 10);
        const int mag = static_cast<int>(3 * g.digit_bound);
        std::uniform_int_distribution<int> coeff(-mag, mag);
        for (int i = 0; i < 60; ++i) {
            LaurentDigits p;
            for (int j = 0; j < 8; ++j) p.set(exp(rng), coeff(rng));
            NormalizeTrace trace;
            const LaurentDigits q = normalize(g, p, &trace);
            // Digit bound.
            CHECK(max_abs_digit(q) <= g.digit_bound);
            // Exact value preservation.
            CHECK(sign_at(g, sub_digits(p, q)) == Sign::Zero);
            // Idempotence, structurally.
            CHECK(normalize(g, q) == q);
            // Strictly decreasing 1-norm across steps.
            for (std::size_t s = 1; s < trace.norms.size(); ++s)
                CHECK(trace.norms[s] < trace.norms[s - 1]);
        }
    }
}

TEST_CASE("normalize handles large single digits") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const LaurentDigits p = parse_digits("{0:100000}");
    const LaurentDigits q = normalize(g, p);
    CHECK(max_abs_digit(q) <= g.digit_bound);
    CHECK(sign_at(g, sub_digits(p, q)) == Sign::Zero);
}
