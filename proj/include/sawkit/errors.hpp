#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sawkit {

// Malformed input text (Touchstone, CSV, JSON documents).
// `line` is 1-based; 0 means the error is not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// Numerical failure: singular conversion, non-finite cost, missing resonance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sawkit
