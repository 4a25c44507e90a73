#include "doctest.h"

#include <random>

#include "semigrid/digits.hpp"
#include "semigrid/errors.hpp"

using namespace semigrid;

namespace {

LaurentDigits random_digits(std::mt19937_64& rng, int span = 8, int mag = 9) {
    std::uniform_int_distribution<int> exp(-span, span);
    std::uniform_int_distribution<int> coeff(-mag, mag);
    std::uniform_int_distribution<int> count(0, 6);
    LaurentDigits d;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) d.set(exp(rng), coeff(rng));
    return d;
}

}  // namespace

TEST_CASE("parse_digits reads both external formats") {
    const LaurentDigits a = parse_digits("{0:2,-1:-2}");
    CHECK(a.at(0) == 2);
    CHECK(a.at(-1) == -2);
    CHECK(a.support_size() == 2);

    CHECK(parse_digits("{}").is_zero());

    const LaurentDigits p = parse_digits("[1][1].[2]");
    CHECK(p.at(1) == 1);
    CHECK(p.at(0) == 1);
    CHECK(p.at(-1) == 2);
}

TEST_CASE("parse_digits reports the error position") {
    CHECK_THROWS_AS(parse_digits("{0:2,"), ParseError);
    CHECK_THROWS_AS(parse_digits("[1]extra"), ParseError);
    CHECK_THROWS_AS(parse_digits("{0:1,0:2}"), ParseError);  // duplicate exponent
    CHECK_THROWS_AS(parse_digits(""), ParseError);
    CHECK_THROWS_AS(parse_digits("[1]."), ParseError);
    try {
        parse_digits("{3:}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 3);
    }
}

TEST_CASE("format_digits canonical outputs") {
    CHECK(format_digits(LaurentDigits{}) == "{}");
    CHECK(format_digits(LaurentDigits{{0, 2}, {-1, -2}}, DigitStyle::Pretty) == "[2].[-2]");
    CHECK(format_digits(LaurentDigits{{1, 1}, {-2, 5}}, DigitStyle::Pretty) == "[1][0].[0][5]");
    CHECK(format_digits(LaurentDigits{{0, 2}, {-1, -2}}) == "{0:2,-1:-2}");
    CHECK(format_digits(LaurentDigits{{2, 1}}, DigitStyle::Pretty) == "[1][0][0]");
}

TEST_CASE("round trip through both styles") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        const LaurentDigits d = random_digits(rng);
        CHECK(parse_digits(format_digits(d, DigitStyle::Compact)) == d);
        CHECK(parse_digits(format_digits(d, DigitStyle::Pretty)) == d);
    }
}

TEST_CASE("addition examples") {
    CHECK(add_digits(parse_digits("{0:2,-1:-2}"), parse_digits("{0:-2,-1:2}")).is_zero());
    CHECK(add_digits(parse_digits("{0:5}"), LaurentDigits{}) == parse_digits("{0:5}"));
    CHECK(add_digits(parse_digits("{1:1,0:1}"), parse_digits("{0:1,-1:2}")) ==
          parse_digits("{1:1,0:2,-1:2}"));
}

TEST_CASE("negate and shift examples") {
    CHECK(negate_digits(parse_digits("{0:3,-2:-1}")) == parse_digits("{0:-3,-2:1}"));
    CHECK(shift_digits(parse_digits("{0:2,-1:-2}"), 1) == parse_digits("{1:2,0:-2}"));
    const LaurentDigits p = parse_digits("{2:7,-3:1}");
    CHECK(shift_digits(p, 0) == p);
}

TEST_CASE("digit algebra properties") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const LaurentDigits a = random_digits(rng);
        const LaurentDigits b = random_digits(rng);
        const LaurentDigits c = random_digits(rng);
        CHECK(add_digits(a, b) == add_digits(b, a));
        CHECK(add_digits(add_digits(a, b), c) == add_digits(a, add_digits(b, c)));
        CHECK(negate_digits(negate_digits(a)) == a);
        const int h = static_cast<int>(rng() % 9) - 4;
        CHECK(shift_digits(shift_digits(a, h), -h) == a);
        CHECK(add_digits(a, negate_digits(a)).is_zero());
    }
}

TEST_CASE("no zero coefficient is ever stored") {
    LaurentDigits d;
    d.set(3, 5);
    d.add_at(3, -5);
    CHECK(d.is_zero());
    d.set(1, 0);
    CHECK(d.support_size() == 0);
}

TEST_CASE("poly_mul_digits convolves exactly") {
    // (2 - 2u^{-1})^2 = 4 - 8u^{-1} + 4u^{-2}
    const LaurentDigits p = parse_digits("{0:2,-1:-2}");
    CHECK(poly_mul_digits(p, p) == parse_digits("{0:4,-1:-8,-2:4}"));
    CHECK(poly_mul_digits(p, LaurentDigits{}).is_zero());
    CHECK(poly_mul_digits(p, LaurentDigits::integer(1)) == p);
}

TEST_CASE("transcribe_decimal places digits by position") {
    const LaurentDigits d = transcribe_decimal("2358.225");
    CHECK(d.at(3) == 2);
    CHECK(d.at(0) == 8);
    CHECK(d.at(-3) == 5);
    CHECK(transcribe_decimal("0").is_zero());
}
