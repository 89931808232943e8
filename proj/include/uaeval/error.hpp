#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uaeval {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid caller input: empty vectors, non-finite values, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A metric is mathematically undefined for otherwise valid input
/// (e.g. the n(n-1) uncertainty form at n = 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. `line` is 1-based; 0 when not tied to a line.
class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace uaeval
