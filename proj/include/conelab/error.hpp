#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Blades of different grade were combined.
class GradeError : public Error {
 public:
  using Error::Error;
};

/// Ambient or subspace dimensions do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A query against a set with no samples.
class EmptySetError : public Error {
 public:
  using Error::Error;
};

/// Unknown catalog entry, group or generator kind.
class CatalogError : public Error {
 public:
  using Error::Error;
};

/// A scale ladder or integer window that is inconsistent with the set resolution.
class ScaleError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// A classifier test point that is farther than the resolution from the set.
class PointNotOnSetError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad CSV/JSON, missing fields, wrong tags.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace conelab
