// Geometry over G x G: points with digit-vector coordinates, translation and
// exact rotation, triangle/convex-polygon membership through linear side
// functionals, equilateral third-vertex construction, region automata over
// two-track convolutions, the interleaved one-sided representation and the
// axis-parallel rectangle same-area relation in D_p.

#pragma once

#include <array>
#include <memory>
#include <vector>

#include "semigrid/automata.hpp"
#include "semigrid/digits.hpp"
#include "semigrid/grid.hpp"
#include "semigrid/sign.hpp"

namespace semigrid {

struct Point {
    LaurentDigits x, y;
    bool operator==(const Point&) const = default;
};

// Normalizes both coordinates into the grid's digit bound.
Point make_point(const GridSpec& g, LaurentDigits x, LaurentDigits y);

struct Triangle {
    Point a, b, c;
};

struct AxisRect {
    Point ll, ur;
};
// Validates ll.x < ur.x and ll.y < ur.y.
AxisRect make_axis_rect(const GridSpec& g, Point ll, Point ur);

Point translate(const GridSpec& g, const Point& p, const Point& v);

// Exact rotation by multiples of 90, 45 (needs sqrt(2)/2) or 30 degrees
// (needs sqrt(3)/2 and 1/2); throws UnsupportedRotation naming what is
// missing.
Point rotate(const GridSpec& g, const Point& p, int angle_degrees);

// Sign of f(q) = (q.y - a.y)(b.x - a.x) - (q.x - a.x)(b.y - a.y): positive on
// the left of the directed line a -> b, zero on it.
Sign side_sign(const GridSpec& g, const Point& a, const Point& b, const Point& q);

// True iff q lies in the closed triangle; throws DegenerateTriangle.
bool triangle_contains(const GridSpec& g, const Triangle& t, const Point& q);

// Vertices must be strictly convex and consistently oriented; closed region.
bool convex_polygon_contains(const GridSpec& g, const std::vector<Point>& vertices,
                             const Point& q);

enum class EquilateralSide { Plus, Minus };
// Third vertex of the equilateral triangle over segment a-b, on the chosen
// side; needs sqrt(3) and 1/2 in the grid.
Point equilateral_third(const GridSpec& g, const Point& a, const Point& b,
                        EquilateralSide side);

// Deterministic transition system deciding triangle membership from the
// two-track convolution of a point, most significant position first.  The
// three side functionals run as one machine: the constant multipliers are
// folded into the transitions and the inhomogeneous terms enter at their
// absolute exponents.
class RegionAutomaton {
  public:
    RegionAutomaton(const GridSpec& g, const Triangle& t, std::int64_t radius = 0);

    const Alphabet& alphabet() const { return alphabet_; }
    bool contains_word(const ConvWord& w) const;
    bool contains_point(const Point& p) const;
    // Fixed-alignment DFA: language over words positioned at top exponent
    // `top` (shorter words are #-padded on the left when run through
    // region_dfa_contains).
    SyncDFA materialize(int top, std::size_t state_cap = 1000000) const;
    int min_top() const;

  private:
    struct Run;
    friend struct RegionMaterializer;

    GridSpec grid_;
    Alphabet alphabet_;
    std::unique_ptr<SignMachine> machine_;
    std::array<LaurentDigits, 3> alpha_, beta_, gamma_;  // oriented side forms
    int emit_lead_ = 0;    // emit position = read position + emit_lead
    int min_coeff_lo_ = 0;
    int gamma_hi_ = 0, gamma_lo_ = 0;
    std::size_t buffer_len_ = 1;
};

struct RegionDfa {
    SyncDFA dfa;
    int top = 0;
};
RegionDfa compile_region_dfa(const GridSpec& g, const Triangle& t, std::int64_t radius = 0,
                             int top = 8, std::size_t state_cap = 1000000);
bool region_dfa_contains(const RegionDfa& r, const Point& p);

// One-sided interleaved representation: a_0 a_1 a_-1 a_2 a_-2 ... with
// zero-fill on the exhausted side; deinterleave inverts it.
std::vector<Int> interleave(const LaurentDigits& p);
LaurentDigits deinterleave(const std::vector<Int>& word);

// Whether the rectangle's area equals ell * p^k exactly, for ell coprime to
// p.  Follows the factorization recipe: sides must read ell1 * p^i and
// ell2 * p^j with ell1*ell2 = ell and i + j = k, where i, j are the positions
// of the last nonzero digits.
bool rect_same_area(const GridSpec& db_grid, const AxisRect& r, const Int& ell, int k);

// Demonstration DFA for the same-area language over interleaved two-track
// words with binary digits; p = 2, ell in {1, 3}, |k| <= 2.
std::shared_ptr<LazyDfa> rect_area_automaton(int ell, int k);
// Runs the automaton on the interleaved convolution of (width, height); the
// digit vectors must use digits {0, 1}.
bool rect_area_dfa_accepts(LazyDfa& a, const LaurentDigits& width, const LaurentDigits& height);

}  // namespace semigrid
