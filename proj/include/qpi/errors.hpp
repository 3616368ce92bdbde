#pragma once

#include <stdexcept>
#include <string>

namespace qpi {

// Error hierarchy. Everything user-visible derives from Error so the CLI can
// map failures to diagnostics uniformly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedRationalError : Error {
    using Error::Error;
};

struct AlphabetError : Error {
    using Error::Error;
};

struct PiViolationError : Error {
    using Error::Error;
};

struct NotPrimitiveError : Error {
    using Error::Error;
};

struct IdentityRootError : Error {
    using Error::Error;
};

struct LineageError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

struct CoverageError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

} // namespace qpi
