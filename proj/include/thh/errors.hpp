#pragma once

#include <stdexcept>
#include <string>

namespace thh {

/// A request reached past the degree an object was materialized to.
class TruncationError : public std::out_of_range {
public:
    explicit TruncationError(const std::string& what) : std::out_of_range(what) {}
};

/// A request exceeded a configured size bound (degree cap, carrier size).
class SizeLimitError : public std::length_error {
public:
    explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

/// Malformed input text (algebra specs, diagram suites). Carries a 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), message_(what), line_(line) {}
    int line() const { return line_; }
    /// The message without the line prefix.
    const std::string& message() const { return message_; }

private:
    std::string message_;
    int line_;
};

}  // namespace thh
