// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace shrinklp {

/// Base class for all shrinklp errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands have incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A covariance root could not be built from the given spec.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Fewer than two observations; the spread estimator is undefined.
class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

/// Sample mean is (numerically) proportional to the target matrix, so the
/// shrinkage coefficients are not identified.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// Target matrix is unusable (e.g. identically zero).
class InvalidTargetError : public Error {
 public:
  using Error::Error;
};

/// A metric's denominator vanished; the record must be excluded.
class MetricUndefinedError : public Error {
 public:
  using Error::Error;
};

/// A CSV file does not carry the columns an operation needs.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace shrinklp
