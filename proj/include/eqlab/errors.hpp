#pragma once

#include <stdexcept>
#include <string>

namespace eqlab {

// Base class for every failure raised by the library. The CLI maps the
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class WindowError : public DomainError {
 public:
  using DomainError::DomainError;
};

class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ContourError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// A numerical routine could not certify its requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqlab
