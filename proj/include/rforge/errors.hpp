#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rforge {

/// Caller broke an API precondition (mismatched variable sets, unknown variable, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input rejected by the standing assumption: the origin must be the only
/// critical point of f.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction failed. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("at byte " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace rforge
