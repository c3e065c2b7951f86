#pragma once

#include <stdexcept>
#include <string>

namespace sllm {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the inputs was violated (bad parameters, cutoff, grid).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed: eigensolver non-convergence, step-size
// underflow, trace drift, degenerate null space.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sllm
