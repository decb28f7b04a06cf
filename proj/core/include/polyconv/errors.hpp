#pragma once

#include <stdexcept>
#include <string>

namespace polyconv {

/// Base class for everything this library throws deliberately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an API precondition (sizes, ranges, inconsistent inputs).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Basis parameters outside the admissible domain (e.g. Jacobi alpha <= -1).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A gamma evaluation landed on a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyconv
