#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semigrid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

struct ValidationError : Error { using Error::Error; };
struct InvalidGrid : Error { using Error::Error; };
struct UnsupportedConstant : Error { using Error::Error; };
struct InputBoundExceeded : Error { using Error::Error; };

struct StateExplosion : Error {
    StateExplosion(const std::string& msg, std::size_t states)
        : Error(msg + " (" + std::to_string(states) + " states)"), states(states) {}
    std::size_t states;
};

struct AlphabetMismatch : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };
struct UnsupportedRotation : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };
struct NotConvex : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct NotDyadicRational : Error { using Error::Error; };
struct NonSquareRequired : Error { using Error::Error; };
struct OperandBoundExceeded : Error { using Error::Error; };

}  // namespace semigrid
