// Representing reals as two-sided digit streams in base u = d + e*sqrt(b)
// with d^2 = b e^2 + 1, so that u + 1/u = 2d.  Truncated streams stand in for
// omega-words at desk scale: digits are explicit down to a truncation depth
// and zero above the declared top.

#pragma once

#include <map>
#include <optional>

#include "semigrid/digits.hpp"
#include "semigrid/numeric.hpp"

namespace semigrid {

struct OmegaSpec {
    Int b;  // non-square base, >= 2
    Int d, e;  // d^2 = b e^2 + 1 with d, e > 3

    Int digit_bound() const { return 2 * d; }     // limit normal form
    Int operand_bound() const { return 6 * d; }   // sign detector input
    Int memory_bound_first() const { return 306 * d * d; }
    Int memory_bound_second() const { return 106 * d; }
};

// Minimal d, e > 3 with d^2 = b e^2 + 1, by ascent over e.
std::pair<Int, Int> pell_pair(const Int& b);
OmegaSpec make_omega_spec(const Int& b);

struct OmegaStream {
    LaurentDigits digits;  // explicit digits; zero above `top`
    int top = 0;           // all exponents above this carry digit 0
    int truncation = 0;    // lowest exponent with a known digit

    static OmegaStream from_digits(const LaurentDigits& d, std::optional<int> truncation = {});
};

// Applies up to `steps` carry updates a_{k+1}+=s, a_k-=2ds, a_{k-1}+=s at the
// largest exponent with |a_k| > 2d (s the digit's sign); value-preserving.
// Unlimited steps reach the fixpoint where every |a_k| <= 2d.
OmegaStream omega_reduce(const OmegaSpec& spec, const OmegaStream& s,
                         std::optional<std::size_t> steps = std::nullopt);

enum class OmegaVerdict { DecidedNegative = -1, DecidedZero = 0, DecidedPositive = 1, Undecided = 2 };
const char* to_string(OmegaVerdict v);

struct OmegaResult {
    OmegaVerdict verdict = OmegaVerdict::Undecided;
    std::size_t steps = 0;
    Int max_abs_memory_first;   // largest |first memory component| pre-overshoot
    Int max_abs_memory_second;
    std::optional<Int> overshoot_first_component;  // old first component at overshoot
};

// Reads digits downward from the top, keeping the two-coefficient memory
// (a_{k+2}, a_{k+1}) -> (a_{k+1} + 2d a_{k+2}, a_k - a_{k+2}).  Overshoot of
// the 306d^2 / 106d memory bounds decides the sign of the stream; reaching
// the truncation with zero memory yields Zero, anything else Undecided.
OmegaResult omega_sign(const OmegaSpec& spec, const OmegaStream& s);

OmegaStream omega_add(const OmegaSpec& spec, const OmegaStream& s1, const OmegaStream& s2);
OmegaResult omega_compare(const OmegaSpec& spec, const OmegaStream& s1, const OmegaStream& s2);

// Multiplication by an integer Laurent polynomial in u (shift/negate/add
// composition); no renormalization.
OmegaStream omega_mul_poly(const OmegaSpec& spec, const LaurentDigits& poly,
                           const OmegaStream& s);

// Exact value in Q(sqrt(b)) of the truncated stream: a + c*sqrt(b).
struct QuadValue {
    Rat a, c;
};
QuadValue omega_value(const OmegaSpec& spec, const OmegaStream& s);
Sign quad_sign(const OmegaSpec& spec, const QuadValue& v);
Sign omega_oracle_sign(const OmegaSpec& spec, const OmegaStream& s);

// Weighted absolute digit sum sum |a_k| * ut^k used by the reduction's
// potential argument; ut defaults to 2.
Rat omega_potential(const OmegaStream& s, const Rat& ut = Rat(2));

}  // namespace semigrid
