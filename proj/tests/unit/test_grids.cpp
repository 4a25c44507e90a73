#include "doctest.h"

#include "semigrid/errors.hpp"
#include "semigrid/grid.hpp"
#include "semigrid/oracle.hpp"

using namespace semigrid;

TEST_CASE("sqrt2half carries the documented parameters") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK(*g.p2 == parse_digits("{0:2,-1:-2}"));
    CHECK(*g.p1 == parse_digits("{-1:2,-2:-1}"));
    CHECK(g.e_ell() == 4);
    CHECK(g.ell == 0);
    CHECK(g.window_bounds == std::vector<Int>{100, 100, 100});
    CHECK(g.minpoly == std::vector<Int>{2, -4, 1});  // u^2 - 4u + 2
    CHECK(g.digit_bound == 3);
    CHECK(g.input_bound == 12);
    CHECK(g.u_lo == Rat(341, 100));
    CHECK(g.u_hi == Rat(342, 100));
}

TEST_CASE("sqrt3half carries the documented parameters") {
    const GridSpec g = make_grid(SqrtB2m1Half{2});
    CHECK(*g.p2 == parse_digits("{0:2,-1:-2}"));  // value sqrt(3) here
    CHECK(g.e_ell() == 8);
    CHECK(g.window_bounds == std::vector<Int>{32000, 32000, 32000});  // 1000 * 2^5
    CHECK(g.digit_bound == 7);
    // p2^2 = 3 exactly.
    CHECK(sign_at(g, sub_digits(poly_mul_digits(*g.p2, *g.p2), LaurentDigits::integer(3))) ==
          Sign::Zero);
}

TEST_CASE("cbrt grids carry the documented bounds") {
    const GridSpec g7 = make_grid(Cbrt7{});
    CHECK(g7.window_bounds == std::vector<Int>{5760, 1440, 360});  // 16c, 4c, c at c = 360
    CHECK(g7.digit_bound == 12);
    CHECK(g7.input_bound == 36);
    CHECK(g7.ell == -1);
    CHECK(g7.u_lo == 11);
    CHECK(g7.u_hi == 12);
    CHECK_FALSE(g7.p1.has_value());

    const GridSpec g65 = make_grid(Cbrt65Half{});
    CHECK(g65.window_bounds == std::vector<Int>{5415000, 1995000, 285000});
    CHECK(g65.digit_bound == 95);
    CHECK(g65.input_bound == 285);
    CHECK(g65.u_lo == Rat(9649, 100));
    CHECK(g65.u_hi == Rat(9650, 100));
}

TEST_CASE("shipped grids all validate") {
    for (const GridSpec& g : shipped_grids()) {
        const ValidationReport r = validate_grid(g);
        INFO(g.name);
        for (const auto& c : r.checks) {
            INFO(c.name << ": " << c.detail);
            CHECK(c.passed);
        }
        CHECK(r.fuzz_failures == 0);
        CHECK(r.fuzz_trials > 0);
    }
}

TEST_CASE("tampered dominance is reported, not thrown") {
    GridSpec g = make_grid(Sqrt2Half{});
    // Make e_ell equal to the sum of the other magnitudes: 1 + 2 = 3.
    g.p4.set(0, 3);
    const ValidationReport r = validate_grid(g);
    CHECK_FALSE(r.ok());
    bool found = false;
    for (const auto& c : r.checks)
        if (c.name == "p4-dominance") {
            found = true;
            CHECK_FALSE(c.passed);
        }
    CHECK(found);
}

TEST_CASE("const_digits returns grid constants") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK(const_digits(g, ConstC{}) == parse_digits("{0:2,-1:-2}"));
    CHECK(const_digits(g, ConstInvB{}) == parse_digits("{-1:2,-2:-1}"));
    CHECK(const_digits(g, ConstIntegerN{0}).is_zero());
    CHECK(const_digits(g, ConstOne{}) == parse_digits("{0:1}"));
    CHECK(const_digits(g, ConstHalf{}) == *g.p1);  // b = 2 here

    const GridSpec d10 = make_grid(Db{10});
    CHECK(const_digits(d10, ConstHalf{}) == parse_digits("{-1:5}"));
    CHECK_THROWS_AS(const_digits(d10, ConstC{}), UnsupportedConstant);
    const GridSpec g7 = make_grid(Cbrt7{});
    CHECK_THROWS_AS(const_digits(g7, ConstInvB{}), UnsupportedConstant);
    CHECK_THROWS_AS(const_digits(g7, ConstHalf{}), UnsupportedConstant);
    // 5 normalizes on the way in.
    CHECK(const_digits(g, ConstIntegerN{5}) == parse_digits("{1:1,0:1,-1:2}"));
}

TEST_CASE("grid JSON round-trips and validates") {
    const GridSpec g = make_grid(Cbrt65Half{});
    const GridSpec back = grid_from_json(grid_to_json(g));
    CHECK(back.name == g.name);
    CHECK(back.minpoly == g.minpoly);
    CHECK(back.p3 == g.p3);
    CHECK(back.p4 == g.p4);
    CHECK(back.window_bounds == g.window_bounds);
    CHECK(back.u_lo == g.u_lo);
    CHECK(*back.p1 == *g.p1);
    CHECK(back.root->radicand == 65);
    CHECK(validate_grid(back).ok());
}

TEST_CASE("grid_by_name resolves the shipped names") {
    CHECK(grid_by_name("d10").name == "d10");
    CHECK(grid_by_name("sqrt2half").name == "sqrt2half");
    CHECK(grid_by_name("sqrt3half").name == "sqrt3half");
    CHECK(grid_by_name("cbrt7").name == "cbrt7");
    CHECK(grid_by_name("cbrt65half").name == "cbrt65half");
    CHECK_THROWS_AS(grid_by_name("nope"), ValidationError);
}

TEST_CASE("u intervals straddle the expected values") {
    // Rough decimal anchors: u = 2 + sqrt(2), b^2 + b sqrt(b^2-1), roots of
    // the cubic defining polynomials.
    const GridSpec s2 = make_grid(Sqrt2Half{});
    const RatInterval v = approx_value(s2, LaurentDigits{{1, 1}}, Rat(1, 100000));
    CHECK(v.lo > Rat(34142, 10000));
    CHECK(v.hi < Rat(34143, 10000));
    const GridSpec c65 = make_grid(Cbrt65Half{});
    const RatInterval w = approx_value(c65, LaurentDigits{{1, 1}}, Rat(1, 100000));
    CHECK(w.lo > Rat(9649, 100));
    CHECK(w.hi < Rat(9650, 100));
}
