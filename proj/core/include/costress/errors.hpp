#pragma once

#include <stdexcept>
#include <string>

namespace costress {

// Precondition violated by the caller (non-skew input to axl, stencil outside
// the domain, non-unit normal, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A field or stress evaluation produced a non-finite value.
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The assembled stiffness is not positive definite.
class WellPosednessError : public std::runtime_error {
 public:
  WellPosednessError(const std::string& what, double eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

// Parameter combination leaves part of the unknowns without any energy.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature rule cannot integrate the polynomial stiffness exactly.
class QuadratureOrderError : public std::invalid_argument {
 public:
  QuadratureOrderError(const std::string& what, int required)
      : std::invalid_argument(what), required_(required) {}
  int required_order() const noexcept { return required_; }

 private:
  int required_;
};

// Iterative procedure (eigen-iteration, extrapolation) failed to settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace costress
