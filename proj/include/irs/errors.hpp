#pragma once

#include <stdexcept>
#include <string>

namespace irs {

/// Base of every library error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failures of a numerical kernel on otherwise valid input.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Input rejected before any computation happened.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IndivisibleGrouping : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownOrder : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Intractable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidFrame : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace irs
