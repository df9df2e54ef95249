#pragma once

#include <stdexcept>
#include <string>

namespace kn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

// Operator commutator left the real span of the compact generators.
struct BracketEscapesAlgebra : Error {
    using Error::Error;
};

// Armijo backtracking underflowed without satisfying the descent condition.
struct StepUnderflowError : Error {
    using Error::Error;
};

// Numeric verdict contradicts the exact oracle. Always an implementation bug.
struct OracleMismatch : Error {
    using Error::Error;
};

struct SearchBudgetExceeded : Error {
    using Error::Error;
};

// Real kernel of a complex-stable stabilizer system came out odd-dimensional.
struct OddKernelDimension : Error {
    using Error::Error;
};

struct NotFixed : Error {
    using Error::Error;
};

struct BasePointNotCritical : Error {
    using Error::Error;
};

} // namespace kn
