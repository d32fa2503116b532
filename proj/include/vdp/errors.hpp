#pragma once

#include <stdexcept>
#include <string>

namespace vdp {

// Base class for every error raised by the library. CLI maps subclasses
// to exit codes (numeric failures -> 3, I/O -> 4).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : Error {
    using Error::Error;
};

struct NonFiniteError : NumericError {
    using NumericError::NumericError;
};

struct InvalidStepError : NumericError {
    using NumericError::NumericError;
};

struct DomainError : NumericError {
    using NumericError::NumericError;
};

struct NotEquilibriumError : NumericError {
    using NumericError::NumericError;
};

struct ConvergenceFailure : NumericError {
    using NumericError::NumericError;
};

struct SingularJacobian : NumericError {
    using NumericError::NumericError;
};

struct TooShortError : NumericError {
    using NumericError::NumericError;
};

struct DegenerateSeparation : NumericError {
    using NumericError::NumericError;
};

struct CoverageError : NumericError {
    using NumericError::NumericError;
};

struct BudgetExceeded : NumericError {
    using NumericError::NumericError;
};

struct UnrecognizedSpacing : NumericError {
    using NumericError::NumericError;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace vdp
