#pragma once

#include <stdexcept>
#include <string>

namespace wro {

/// Base for every error raised by the library. Failed numeric *checks* are
/// reported in result structs, not thrown.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGridError : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside [a, b].
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operands live on different grids or have mismatched lengths.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on the arguments was violated (missing derivative data,
/// k = 0, kind mismatch, zero vector, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Bad user configuration: unknown names, non-nested levels.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Division by an eigenvalue that is numerically zero.
class DegenerateEigenvalueError : public Error {
public:
    using Error::Error;
};

}  // namespace wro
