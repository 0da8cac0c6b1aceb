#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nichol {

/// Matrix Market input could not be parsed; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(long line, const std::string& what)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// A structural invariant does not hold (missing diagonal, bad row_ptr, ...).
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes do not match.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A diagonal entry that must be positive is not.
class NotPositiveDiagonalError : public std::runtime_error {
public:
    NotPositiveDiagonalError(std::int64_t row, double value)
        : std::runtime_error("diagonal entry at row " + std::to_string(row) +
                             " is not positive (value " + std::to_string(value) + ")"),
          row_(row), value_(value) {}
    std::int64_t row() const { return row_; }
    double value() const { return value_; }

private:
    std::int64_t row_;
    double value_;
};

/// A triangular factor has a zero or non-finite diagonal and cannot be applied.
class SingularFactorError : public std::runtime_error {
public:
    explicit SingularFactorError(std::int64_t row)
        : std::runtime_error("singular factor: zero or non-finite diagonal at row " +
                             std::to_string(row)),
          row_(row) {}
    std::int64_t row() const { return row_; }

private:
    std::int64_t row_;
};

/// Incomplete factorization hit a nonpositive pivot.
class BreakdownError : public std::runtime_error {
public:
    BreakdownError(std::int64_t row, double pivot)
        : std::runtime_error("factorization breakdown at row " + std::to_string(row) +
                             ", pivot " + std::to_string(pivot)),
          row_(row), pivot_(pivot) {}
    std::int64_t row() const { return row_; }
    double pivot() const { return pivot_; }

private:
    std::int64_t row_;
    double pivot_;
};

/// Dense Cholesky found a nonpositive pivot: the input is not SPD.
class NotSpdError : public std::runtime_error {
public:
    NotSpdError(std::int64_t row, double pivot)
        : std::runtime_error("matrix is not positive definite: pivot " + std::to_string(pivot) +
                             " at row " + std::to_string(row)),
          row_(row), pivot_(pivot) {}
    std::int64_t row() const { return row_; }
    double pivot() const { return pivot_; }

private:
    std::int64_t row_;
    double pivot_;
};

/// Training produced or received a non-finite quantity.
class TrainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied configuration (CLI flags, method parameters, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nichol
