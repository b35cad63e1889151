#pragma once

#include <stdexcept>
#include <string>

namespace babai {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sizes of the inputs do not agree (vector length vs matrix dimension, etc).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An index is outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A tuning parameter is outside its admissible interval.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A mathematical argument is outside the function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The matrix is numerically rank deficient.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds a hard size guard.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

/// An iteration failed to terminate within its guard budget.
class NonTerminationError : public Error {
 public:
  using Error::Error;
};

/// A file or text stream could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace babai
