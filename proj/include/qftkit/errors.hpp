#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qftkit {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation
// (q outside [1,2), evaluation at or beyond a support edge, alpha <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Structurally invalid parameter combination (empty ladder, bad tolerance, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Evaluation at a pole of a special function.
class PoleError : public Error {
public:
    using Error::Error;
};

// Evaluation on a branch cut without a side request.
class BranchCutError : public Error {
public:
    using Error::Error;
};

// Evaluation exactly at a branch point.
class BranchPointError : public Error {
public:
    using Error::Error;
};

// Result cannot be delivered at the requested accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

// An iteration or quadrature failed to converge within its budget.
// Carries the best partial value and its error estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, std::complex<double> partial, double estimate)
        : Error(msg), partial_value(partial), error_estimate(estimate) {}
    std::complex<double> partial_value;
    double error_estimate;
};

// Contour truncation did not stabilize under doubling.
class TruncationError : public Error {
public:
    using Error::Error;
};

// A limit ladder (delta -> 0 or epsilon -> 0) failed to extrapolate.
class ExtrapolationError : public Error {
public:
    using Error::Error;
};

// Series evaluation requested outside its validity region.
class ValidityError : public Error {
public:
    using Error::Error;
};

// Term budget of a nested sum exceeded.
class BudgetError : public Error {
public:
    using Error::Error;
};

// A least-squares diagnostic fit failed (growth check, tail fit).
class FitError : public Error {
public:
    using Error::Error;
};

// Two routes to the same quantity disagree beyond the expected tolerance.
class ConsistencyWarning : public Error {
public:
    using Error::Error;
};

} // namespace qftkit
