#ifndef SEMIBJ_ERRORS_HPP
#define SEMIBJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semibj {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ill-posed or malformed input: bad dimensions, hypothesis violations,
/// unparsable files. Maps to CLI exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

/// An iteration ran out of budget or a search failed to certify its target.
/// Maps to CLI exit code 2.
struct NumericalError : Error {
  using Error::Error;
};

struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};

struct NotHermitian : ValidationError {
  using ValidationError::ValidationError;
};

struct NotPositive : ValidationError {
  using ValidationError::ValidationError;
};

struct NotABounded : ValidationError {
  double residual;
  explicit NotABounded(double res, const std::string& msg)
      : ValidationError(msg), residual(res) {}
};

struct SpaceMismatch : ValidationError {
  using ValidationError::ValidationError;
};

struct NotNormalizable : ValidationError {
  using ValidationError::ValidationError;
};

struct NotNormalized : ValidationError {
  using ValidationError::ValidationError;
};

struct ZeroOperator : ValidationError {
  using ValidationError::ValidationError;
};

struct EmptyRange : ValidationError {
  using ValidationError::ValidationError;
};

struct BadRank : ValidationError {
  using ValidationError::ValidationError;
};

/// Malformed problem file; message carries field context.
struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};

struct NoConvergence : NumericalError {
  using NumericalError::NumericalError;
};

struct WitnessNotFound : NumericalError {
  double margin;
  explicit WitnessNotFound(double m, const std::string& msg)
      : NumericalError(msg), margin(m) {}
};

}  // namespace semibj

#endif
