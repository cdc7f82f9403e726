#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osculata {

/// Malformed arguments: dimension mismatches, bad generator parameters.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Polynomial or spec text that does not parse. Line and column are 1-based.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : InputError(message + " (line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A sample point that cannot serve as a smooth chart point.
class PointRejected : public InputError {
public:
    enum class Reason { BasePoint, NonImmersive };

    PointRejected(Reason reason, const std::string& message)
        : InputError(message), reason_(reason) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

/// Jet tower did not stabilize within the requested order.
class StabilizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical invariant that must hold by construction was observed broken.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace osculata
