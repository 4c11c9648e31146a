#pragma once

#include <stdexcept>
#include <string>

namespace fhr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not reach the requested tolerance.
/// Carries the best available estimate and its error bound.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_bound)
        : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

/// A Laplace-type integral or a fixed-point iteration diverges.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Fields or grids with incompatible shapes were combined.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration; names the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A time integration produced non-finite or runaway values.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// The traveling-wave constraint system admits no tanh solution.
class NoSolutionError : public Error {
public:
    NoSolutionError(const std::string& what, double value) : Error(what), value_(value) {}
    /// The offending value (D times the Riccati constant).
    double value() const noexcept { return value_; }

private:
    double value_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fhr
