#pragma once

#include <stdexcept>
#include <string>

namespace mfk {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two values live over different variable lists.
struct VarMismatchError : Error {
    using Error::Error;
};

// Matrix/vector shapes do not line up.
struct DimensionError : Error {
    using Error::Error;
};

// Bad parameter (out of range, empty generator, ...).
struct InvalidArgumentError : Error {
    using Error::Error;
};

// Input text could not be parsed; position is 1-based.
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

// The configured step budget ran out before the computation finished.
struct BudgetExhaustedError : Error {
    using Error::Error;
};

// A truncated computation failed to stabilize within its degree cap.
struct NonStabilizedError : Error {
    using Error::Error;
};

// The potential does not define an isolated singularity.
struct NonIsolatedError : Error {
    using Error::Error;
};

}  // namespace mfk
