#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tinv {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A field was evaluated outside its domain (pole, log of non-positive, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Slot, shape or variance misuse in tensor algebra.
class TensorError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised by the F-planar recovery when the recovered 1-form does not
/// reproduce the target connection.
class NotFPlanarError : public Error {
 public:
  NotFPlanarError(const std::string& message, double residual)
      : Error(message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace tinv
