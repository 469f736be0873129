#pragma once

#include <stdexcept>
#include <string>

namespace cellrate {

// Root of all library-thrown errors (invalid arguments throw std::invalid_argument).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed-point bracket expansion exhausted; the gain distribution is degenerate
// (e.g. all mass at zero).
struct NoBracketError : Error {
    using Error::Error;
};

// Solver tolerance unmet after the iteration cap.
struct NoConvergenceError : Error {
    using Error::Error;
};

// Exact SCP enumeration would exceed the term cap; use the MC path.
struct SupportTooLargeError : Error {
    using Error::Error;
};

// A factorization lost positive-definiteness; indicates a bug for valid inputs.
struct NumericalFailureError : Error {
    using Error::Error;
};

// The explicit SHO/APC beta formula has a vanishing denominator; callers fall
// back to the bisection solver.
struct DegenerateTapsError : Error {
    using Error::Error;
};

// Division by a zero quantity in a derived output (e.g. per-active-user rate
// at q = 1).
struct DivisionByZeroError : Error {
    using Error::Error;
};

// Bad run configuration (CLI flags, config files, impossible transforms).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace cellrate
