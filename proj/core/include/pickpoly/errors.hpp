#pragma once

#include <stdexcept>
#include <string>

namespace pickpoly {

/// Base class of every error raised by the library. `kind()` is the stable
/// machine-readable tag the CLI reports in its JSON error object.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

/// Malformed input: non-finite coefficients, bad JSON, bad CSV.
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input_error"; }
};

/// A parameter violates the constraints of its parameter space.
class ConstraintError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "constraint_error"; }
};

class NotSpectralDensityError : public Error {
 public:
  NotSpectralDensityError(const std::string& what, double offending)
      : Error(what), offending_(offending) {}
  const char* kind() const noexcept override { return "not_spectral_density"; }
  double offending_value() const noexcept { return offending_; }

 private:
  double offending_;
};

class OptimizationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "optimization_error"; }
};

class StudyError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "study_error"; }
};

}  // namespace pickpoly
