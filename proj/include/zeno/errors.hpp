#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

/// Raised when an input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for an invalid experiment configuration field.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Raised when a numerical result fails an accuracy or consistency check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zeno
