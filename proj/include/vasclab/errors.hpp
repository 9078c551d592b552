#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vasclab {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. density <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid input record; carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Missing or inconsistent inputs to a post-processing routine.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not deliver a trustworthy result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InversionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SearchFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ProjectorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Power-law fit whose R^2 falls below the acceptance threshold.
class UnreliableFitError : public FitError {
 public:
  UnreliableFitError(const std::string& what, double r2) : FitError(what), r2_(r2) {}
  double r2() const noexcept { return r2_; }

 private:
  double r2_;
};

class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PositivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline ValidationError::ValidationError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "validation failed:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

}  // namespace vasclab
