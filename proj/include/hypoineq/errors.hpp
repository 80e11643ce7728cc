#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypoineq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// A numeric routine could not reach the requested tolerance. The partial
/// estimate is kept so callers can still report it.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double partial_value, double partial_error)
        : Error(what), partial_value_(partial_value), partial_error_(partial_error) {}
    double partial_value() const noexcept { return partial_value_; }
    double partial_error() const noexcept { return partial_error_; }

private:
    double partial_value_;
    double partial_error_;
};

/// Integral detected as non-convergent (non-integrable singularity or tail).
class DivergenceError : public AccuracyError {
public:
    using AccuracyError::AccuracyError;
};

/// Integrand returned NaN.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::vector<double> point)
        : Error(what), point_(std::move(point)) {}
    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class NoFeasiblePoint : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace hypoineq
