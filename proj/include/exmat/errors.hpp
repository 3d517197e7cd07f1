#pragma once

#include <stdexcept>
#include <string>

namespace exmat {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or non-finite input (bad JSON, NaN/Inf entries, shape mismatch).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A theorem hypothesis required by a constructor/transform does not hold.
class HypothesisViolation : public Error {
public:
    HypothesisViolation(const std::string& msg, double defect = 0.0)
        : Error(msg), defect_(defect) {}
    double defect() const { return defect_; }

private:
    double defect_;
};

// An operation precondition (e.g. spectral radius margin) is violated.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

// Iterative routine failed to converge within its budget.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

// Requested reduction is not supported for this input (degenerate cases).
class NotSupported : public Error {
public:
    using Error::Error;
};

// Canonical-form zero pattern not attained; carries the measured residual.
class PatternViolation : public Error {
public:
    PatternViolation(const std::string& msg, double residual)
        : Error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Rejection sampling exhausted its attempt budget.
class GenerationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace exmat
