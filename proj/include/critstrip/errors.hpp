#pragma once

#include <stdexcept>
#include <string>

namespace critstrip {

// Evaluation at a pole of the function in question.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Argument outside the domain an operation is defined on.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Requested accuracy could not be reached within the configured budget.
struct AccuracyError : std::runtime_error {
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// A branch-tracking path came too close to a zero or pole, or a phase step
// exceeded the configured cap.
struct BranchError : std::runtime_error {
    explicit BranchError(const std::string& what) : std::runtime_error(what) {}
};

// A prime table is too small for the requested tolerance.
struct InsufficientTableError : std::runtime_error {
    explicit InsufficientTableError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver failed to converge.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Accumulated phase was not close enough to a multiple of 2*pi to call the
// winding number.
struct AmbiguousWindingError : std::runtime_error {
    explicit AmbiguousWindingError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace critstrip
