#pragma once

#include <stdexcept>
#include <string>

namespace projqm {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands have incompatible dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A value fails a construction-time invariant (hermiticity, trace, norm, ...)
// or a payload fails schema/content validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An iterative routine failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// A numeric result is unusable (NaN/Inf, degenerate data).
class NumericError : public Error {
public:
    using Error::Error;
};

// A file is missing or cannot be read/written.
class FileError : public Error {
public:
    using Error::Error;
};

}  // namespace projqm
