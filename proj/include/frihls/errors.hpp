#pragma once
// Error taxonomy shared across modules. Everything derives from
// std::runtime_error; the distinct types let tests assert the failure class.

#include <stdexcept>
#include <string>

namespace frihls {

// A stated precondition does not hold (boundary decay, coverage floors, ...).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};

// An input would make the result dominated by an uncontrolled term.
struct ConditioningError : std::runtime_error {
    double neglected = 0.0;
    ConditioningError(const std::string& m, double n) : std::runtime_error(m), neglected(n) {}
};

// A quadrature or inversion could not certify the requested accuracy.
struct AccuracyError : std::runtime_error {
    double last_estimate = 0.0, prev_estimate = 0.0;
    explicit AccuracyError(const std::string& m, double last = 0.0, double prev = 0.0)
        : std::runtime_error(m), last_estimate(last), prev_estimate(prev) {}
};

// A configured resource cap (paths, steps, points) would be exceeded.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& m) : std::runtime_error(m) {}
};

// An estimator is starved of effective samples where a value was requested.
struct CoverageError : std::runtime_error {
    explicit CoverageError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace frihls
