#pragma once

#include <stdexcept>
#include <string>

namespace msc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// File could not be opened or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

// An iterative solver stopped before reaching its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double primal_residual, double dual_residual, int iterations)
      : Error(what),
        primal_residual_(primal_residual),
        dual_residual_(dual_residual),
        iterations_(iterations) {}

  double primal_residual() const { return primal_residual_; }
  double dual_residual() const { return dual_residual_; }
  int iterations() const { return iterations_; }

 private:
  double primal_residual_;
  double dual_residual_;
  int iterations_;
};

}  // namespace msc
