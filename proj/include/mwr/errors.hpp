#pragma once

#include <stdexcept>
#include <string>

namespace mwr {

/// Grid spacing too coarse for the body.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iteration failed to reach the residual tolerance.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, double residual_value)
        : std::runtime_error(what), residual(residual_value) {}
    double residual;
};

/// Mask/candidate bookkeeping violated an internal invariant.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace mwr
