#pragma once

#include <stdexcept>
#include <string>

namespace vaxnet {

/// A numeric argument outside its domain (negative rate, exponent <= 3, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was asked of a weight law that does not support it.
class UnsupportedKindError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Vaccination strategy incompatible with the weight law on the graph.
class StrategyMismatchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Monte Carlo ensemble too small to support the requested estimate.
class InsufficientSamplesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root bracketing found R not monotone in the strategy parameter.
class NonMonotoneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace vaxnet
