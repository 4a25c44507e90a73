// Arbitrary-precision integer/rational aliases and the three-valued sign.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace semigrid {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of_int(const Int& v) {
    if (v > 0) return Sign::Positive;
    if (v < 0) return Sign::Negative;
    return Sign::Zero;
}

inline Sign sign_of_rat(const Rat& v) {
    if (v > 0) return Sign::Positive;
    if (v < 0) return Sign::Negative;
    return Sign::Zero;
}

inline Sign opposite(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::Negative: return "Negative";
        case Sign::Zero: return "Zero";
        case Sign::Positive: return "Positive";
    }
    return "?";
}

inline std::int64_t to_int64_checked(const Int& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace semigrid
