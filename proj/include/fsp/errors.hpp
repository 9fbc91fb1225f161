#pragma once

#include <stdexcept>
#include <string>

namespace fsp {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix required to be symmetric positive definite failed the eigenvalue check.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// A loading matrix is rank deficient where full column rank is required.
class SingularLoadings : public Error {
 public:
  using Error::Error;
};

/// A variable's communality reaches or exceeds 1, leaving no unique variance.
class CommunalityAtLeastOne : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not conform.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A grid or record collection that must be non-empty is empty.
class EmptyGrid : public Error {
 public:
  using Error::Error;
};

/// Records passed to an aggregation do not share the coordinates they must share.
class InconsistentCoordinates : public Error {
 public:
  using Error::Error;
};

/// A data column is constant, so it cannot be standardized.
class ZeroVarianceColumn : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (CSV or config); the message names the offending location.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsp
