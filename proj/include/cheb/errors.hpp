#pragma once

#include <stdexcept>
#include <string>

namespace cheb {

/// Base for every failure raised by the library. Precondition violations
/// (bad k/m, empty window, ...) use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class CoefficientOverflow : public Error {
 public:
  using Error::Error;
};

class PoleInput : public Error {
 public:
  using Error::Error;
};

class BoundaryInput : public Error {
 public:
  using Error::Error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NoCrossing : public Error {
 public:
  using Error::Error;
};

class EmptyJulia : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cheb
