#pragma once

#include <stdexcept>
#include <string>

namespace ntdlab {

/// Invalid mesh data or a violated mesh invariant.
struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad dimensions, non-positive potential, empty boundary patch, ...
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Solver non-convergence, indefinite system, failed eigensolve.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Experiment configuration that fails to parse or validate.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ntdlab
