// Finite-window sign determination for digit vectors.  The window slides from
// the most significant digit downward, eliminating the leading coefficient
// with the monic zero-polynomial p3 each step.  When a window entry exceeds
// its cap, the current window's value already dominates the unread tail and
// decides the sign; on a clean exit the residual window is all that is left.

#pragma once

#include <unordered_map>

#include "semigrid/automata.hpp"
#include "semigrid/digits.hpp"
#include "semigrid/grid.hpp"

namespace semigrid {

struct WindowState {
    enum class Status { Running, DecidedPositive, DecidedNegative };
    std::vector<Int> window;  // entries for exponents k, k-1, ..., k-h+1
    Status status = Status::Running;
};

struct OvershootEvent {
    int position = 0;              // exponent of the leading window entry
    LaurentDigits window;          // the overshooting window as a digit vector
    Sign window_sign = Sign::Zero;
    Sign leading_sign = Sign::Zero;  // sign of the coefficient whose update overshot
};

struct SignRunInfo {
    std::size_t steps = 0;
    Int max_abs_window_entry;
    std::optional<OvershootEvent> overshoot;
};

// Exact sign of p(u).  Requires every |digit| <= input_bound.
Sign sign_of(const GridSpec& g, const LaurentDigits& p, SignRunInfo* info = nullptr);

enum class Ordering { Less, Equal, Greater };
const char* to_string(Ordering o);

// Ordering of values at u; operands should be in normal form so that the
// difference respects the input bound.
Ordering compare(const GridSpec& g, const LaurentDigits& p, const LaurentDigits& q);
bool equal(const GridSpec& g, const LaurentDigits& p, const LaurentDigits& q);

// The int64 window dynamics shared by the compiled automata.  Residual and
// overshoot window signs are settled by the oracle and memoized.
class SignMachine {
  public:
    SignMachine(GridSpec g, std::int64_t max_stream_digit);

    struct State {
        std::vector<std::int64_t> window;  // empty once decided
        std::int8_t decided = 0;           // 0 running, else the decided sign
        bool operator==(const State&) const = default;
    };
    struct StateHash {
        std::size_t operator()(const State& s) const;
    };

    State initial_state() const;
    State step(const State& s, std::int64_t digit) const;
    // Outcome if the input ended here: h-1 pending zero-steps, then the
    // residual window's sign.
    Sign finish(const State& s) const;

    const GridSpec& grid() const { return grid_; }

  private:
    Sign window_sign(const std::vector<std::int64_t>& w) const;

    GridSpec grid_;
    std::vector<std::int64_t> d_;     // p3 coefficients d_0..d_{-h+1}
    std::vector<std::int64_t> caps_;  // per-offset window caps
    mutable std::unordered_map<std::string, Sign> sign_cache_;
};

}  // namespace semigrid
