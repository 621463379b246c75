#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

/// Base class for all frontlab errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration: unknown model, malformed config file, invalid grid.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Newton or eigen iteration failed to converge.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : Error(what), last_residual(last_residual) {}
    double last_residual = 0.0;
};

/// A spectral hypothesis (stable essential spectrum, simple zero eigenvalue,
/// required symmetry) failed where an operation needs it.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Time integration produced NaN/overflow.
class BlowupError : public Error {
public:
    BlowupError(const std::string& what, double time) : Error(what), time(time) {}
    double time = 0.0;
};

/// Linear solve hit a (near-)zero pivot.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double condition_estimate)
        : Error(what), condition_estimate(condition_estimate) {}
    double condition_estimate = 0.0;
};

}  // namespace frontlab
