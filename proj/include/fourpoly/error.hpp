#pragma once

#include <stdexcept>
#include <string>

namespace fourpoly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integer arithmetic left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request exceeded the configured memory cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Base for "the precomputed data does not reach far enough" failures.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class OutOfTableError : public CoverageError {
 public:
  using CoverageError::CoverageError;
};

class TruncationError : public CoverageError {
 public:
  using CoverageError::CoverageError;
};

class ScaleMismatchError : public Error {
 public:
  using Error::Error;
};

class NonUnitLeadingError : public Error {
 public:
  using Error::Error;
};

class HalfIntegerExponentError : public Error {
 public:
  using Error::Error;
};

class NonGaussianPhaseError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent class-table cache file.
class CacheError : public Error {
 public:
  using Error::Error;
};

}  // namespace fourpoly
