// Grid instances: an algebraic base u > 1 together with the defining
// polynomials p1..p4, digit and window bounds.  p3 is monic with value 0 at u
// and drives the sign window; p4 has value 0 with a dominant coefficient and
// drives normalization; p1/p2 represent the constants 1/b and c when present.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semigrid/digits.hpp"
#include "semigrid/numeric.hpp"

namespace semigrid {

struct RootSpec {
    int power;     // 2 for square roots, 3 for cube roots
    Int radicand;  // c^power == radicand
};

struct GridSpec {
    std::string name;
    std::vector<Int> minpoly;  // ascending, monic; u is its unique root in [u_lo, u_hi]
    Rat u_lo, u_hi;            // isolating interval, u_lo > 1
    std::optional<LaurentDigits> p1;  // value 1/b
    std::optional<LaurentDigits> p2;  // value c
    std::vector<Int> p3;              // d_0 .. d_{-h+1} with d_0 = 1
    LaurentDigits p4;                 // value 0; dominant coefficient e_ell at exponent ell
    int ell = 0;
    Int digit_bound;                 // D: normal-form digits satisfy |a_k| <= D
    std::vector<Int> window_bounds;  // per-offset caps, offset 0 = leading window entry
    Int input_bound;                 // sign precondition: |a_k| <= input_bound

    std::optional<Int> base_b;    // b, when p1 is present (and for D_b grids)
    std::optional<RootSpec> root; // semantics of p2, when present

    int h() const { return static_cast<int>(p3.size()); }
    const Int& window_cap(std::size_t offset) const;
    Int max_window_cap() const;
    Int max_abs_p3_coeff() const;
    // Magnitude bound on window entries while the sign algorithm is running.
    Int run_cap() const;
    const Int& e_ell() const;
};

struct Db { int b; };
struct Sqrt2Half {};
struct SqrtB2m1Half { int b; };
struct Cbrt7 {};
struct Cbrt65Half {};
using GridKind = std::variant<Db, Sqrt2Half, SqrtB2m1Half, Cbrt7, Cbrt65Half>;

// Builds and oracle-validates one of the concrete grid instances.
GridSpec make_grid(const GridKind& kind);

// The five instances exercised throughout the test suites:
// d10, sqrt2half, sqrt3half, cbrt7, cbrt65half.
std::vector<GridSpec> shipped_grids();
// Resolves "d<b>", "sqrt2half", "sqrt3half", "cbrt7", "cbrt65half".
GridSpec grid_by_name(const std::string& name);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::size_t fuzz_trials = 0;
    std::size_t fuzz_overshoots = 0;
    std::size_t fuzz_failures = 0;
    bool ok() const;
};

// Checks every GridSpec invariant through the oracle and fuzzes the sign
// algorithm's overshoot condition on random inputs.  Empirical, not a proof;
// reports failures instead of throwing.
ValidationReport validate_grid(const GridSpec& g);

struct ConstOne {};
struct ConstIntegerN { Int n; };
struct ConstInvB {};
struct ConstC {};
struct ConstHalf {};
using GridConstant = std::variant<ConstOne, ConstIntegerN, ConstInvB, ConstC, ConstHalf>;

// Normalized digits of a named grid constant; throws UnsupportedConstant when
// the grid does not contain it.
LaurentDigits const_digits(const GridSpec& g, const GridConstant& which);

GridSpec grid_from_json(const std::string& json_text);
std::string grid_to_json(const GridSpec& g);

}  // namespace semigrid
