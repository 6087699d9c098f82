#pragma once

#include <stdexcept>
#include <string>

namespace substefan {

/// Iteration budget exhausted before the convergence criterion was met.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A root-bracketing interval does not enclose a sign change.
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

/// A solution grid carries no usable information for the requested estimate.
struct DegenerateGridError : std::runtime_error {
    explicit DegenerateGridError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace substefan
