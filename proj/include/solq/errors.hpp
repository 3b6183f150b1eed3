#pragma once

#include <stdexcept>
#include <string>

namespace solq {

// Numerical failures (CLI exit code 3). Contract violations on arguments use
// std::invalid_argument directly.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidFrequencyError : NumericalError {
    using NumericalError::NumericalError;
};

struct BracketError : NumericalError {
    using NumericalError::NumericalError;
};

struct IntegrationError : NumericalError {
    using NumericalError::NumericalError;
};

struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

struct RejectionOverflowError : NumericalError {
    using NumericalError::NumericalError;
};

struct CostGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace solq
