#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace perfro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iteration_cap)
      : Error(what), iteration_cap_(iteration_cap) {}
  int iteration_cap() const noexcept { return iteration_cap_; }

 private:
  int iteration_cap_;
};

class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Raised when a raw matrix has clustered eigenvalues whose eigenvectors do
/// not span; such input needs an explicit factored form.
class DefectiveMatrixError : public Error {
 public:
  using Error::Error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::complex<double> point)
      : Error(what), point_(point) {}
  std::complex<double> point() const noexcept { return point_; }

 private:
  std::complex<double> point_;
};

class NonDifferentiableError : public Error {
 public:
  NonDifferentiableError(const std::string& what, int order)
      : Error(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// f(A) came out with imaginary parts that are not roundoff.
class NonRealResultError : public Error {
 public:
  using Error::Error;
};

/// conj(f^(j)(lambda)) != f^(j)(conj(lambda)) for some derivative order j.
class ConjugateSymmetryError : public NonRealResultError {
 public:
  ConjugateSymmetryError(const std::string& what, std::complex<double> lambda,
                         int order, std::complex<double> at_lambda,
                         std::complex<double> at_conjugate)
      : NonRealResultError(what),
        lambda_(lambda),
        order_(order),
        at_lambda_(at_lambda),
        at_conjugate_(at_conjugate) {}

  std::complex<double> lambda() const noexcept { return lambda_; }
  int order() const noexcept { return order_; }
  std::complex<double> value_at_lambda() const noexcept { return at_lambda_; }
  std::complex<double> value_at_conjugate() const noexcept {
    return at_conjugate_;
  }

 private:
  std::complex<double> lambda_;
  int order_;
  std::complex<double> at_lambda_;
  std::complex<double> at_conjugate_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace perfro
