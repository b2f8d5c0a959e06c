#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace n2v {

// Malformed input text. line() is 1-based; 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        message_(what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }
  // Message without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

// Input that parses but violates a precondition (disconnected graph, unknown
// node name, infeasible perturbation, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values during optimization.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace n2v
