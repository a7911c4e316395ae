#pragma once

#include <stdexcept>
#include <string>

namespace rasym {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (expression DSL, scale strings, config files).
struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

// Mathematically undefined request: ln of a nonpositive value, division by
// zero, series inversion of a non-unit, and similar.
struct DomainError : Error {
    using Error::Error;
};

// The requested computation cannot be certified at the requested precision
// or truncation order.
struct PrecisionError : Error {
    using Error::Error;
};

// The map falls outside the class the algorithms support (not
// reciprocal-normalizable, a1 >= 0, support off the step lattice,
// inconsistent matching, irrational report scale, ...).
struct StructureError : Error {
    using Error::Error;
};

}  // namespace rasym
