#pragma once

#include <stdexcept>
#include <string>

namespace able2rank {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or read.
class io_error : public error {
 public:
  using error::error;
};

/// Malformed input text (CSV cell, schema line, measure name).
class parse_error : public error {
 public:
  using error::error;
};

/// Well-formed input that violates a precondition.
class validation_error : public error {
 public:
  using error::error;
};

}  // namespace able2rank
