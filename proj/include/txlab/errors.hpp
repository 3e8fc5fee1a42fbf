#pragma once

#include <stdexcept>
#include <string>

namespace txlab {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Physically invalid parameter (negative rate, zero total loss, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Structurally invalid configuration (bad topology, missing port, bad file layout, CLI usage).
struct ConfigError : Error {
    using Error::Error;
};

// Malformed file content; message carries the offending line where known.
struct ParseError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of a pure function.
struct DomainError : Error {
    using Error::Error;
};

// Numerical failure: singular solve, excessive residual, stiffness rejection.
struct NumericalError : Error {
    using Error::Error;
};

// Iteration failed to converge within its contract.
struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

// A scan window does not contain the requested feature.
struct WindowError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace txlab
