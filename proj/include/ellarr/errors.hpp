#pragma once

#include <stdexcept>
#include <string>

namespace ellarr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: violated preconditions, malformed specs, degenerate input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested too close to a pole. Callers probing near poles
/// on purpose can catch this one specifically.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its tolerance. Never a
/// mathematical state of the input.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration was asked for a level above the configured cap.
class LevelCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace ellarr
