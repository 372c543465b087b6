#pragma once

#include <stdexcept>
#include <string>

namespace fracsource {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument for a mathematical operation (alpha <= 0, t <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series did not meet its tolerance within the term cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// The asymptotic expansion cannot reach the requested tolerance at this |x|.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Invalid basis index, e.g. (k=2, n=0).
class IndexError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// A mode matrix came out with det <= 0. Signals an upstream accuracy bug.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

// Malformed input file or configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracsource
