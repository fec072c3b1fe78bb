#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bailout {

/// Input violates a documented precondition (dimensions, signs, ranges).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The network breaks a structural invariant at construction time.
class NetworkError : public InvalidInput {
public:
    enum class Reason { DimensionMismatch, NegativeEntry, NonFinite, SelfLoop, IsolatedNode, Connectivity };

    NetworkError(Reason reason, const std::string &what, std::size_t node = 0)
        : InvalidInput(what), reason_(reason), node_(node) {}

    Reason reason() const noexcept { return reason_; }
    /// Offending node (row) when the reason refers to one.
    std::size_t node() const noexcept { return node_; }

private:
    Reason reason_;
    std::size_t node_;
};

/// Fixed-point iteration did not reach the requested residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string &what, double residual, std::size_t iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    double residual_;
    std::size_t iterations_;
};

/// LP backend failed or reported an impossible status for a well-posed model.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ratio metric whose denominator vanishes (Gini family, psi, PoF).
class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exhaustive search or enumeration would exceed its configured cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance or table file.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace bailout
