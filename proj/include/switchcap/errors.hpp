#pragma once

#include <stdexcept>
#include <string>

namespace switchcap {

// Base of every error thrown by the library. Callers that only care about
// "something was out of contract" can catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

class InvalidOrderSet : public Error {
 public:
  using Error::Error;
};

/// Raised when a brute-force simulation would exceed the work budget.
class SizeGuard : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace switchcap
