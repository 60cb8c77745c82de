#pragma once

#include <stdexcept>
#include <string>

namespace telechan {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense or structured cutoff was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the mathematical domain of an operation
/// (odd n where even is required, negative squeezing, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Shapes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input object violates one of its invariants. `invariant()` names it
/// (e.g. "unit_trace", "positive_semidefinite", "probability_sum").
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : Error("invariant '" + invariant + "' violated: " + detail),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Malformed input text (JSON syntax, wrong field types).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: singular matrices, failed eigen-solves, unpaired
/// symplectic spectra.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace telechan
