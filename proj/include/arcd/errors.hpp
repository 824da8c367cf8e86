#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arcd {

// Bad user input: unreadable files, malformed CSV, invalid options.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line)
        : InputError(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Anything that goes wrong inside the numerics.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A zero denominator in the least-squares estimators (all lagged values zero).
class DegenerateSeriesError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Argument outside the mathematical domain of a formula (|phi| >= 1, sigma2 <= 0, ...).
class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientPointsError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// The requested lower tail probability is never attained on the grid.
class LevelUnreachableError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoCrossingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace arcd
