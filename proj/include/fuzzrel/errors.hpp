#pragma once

#include <stdexcept>
#include <string>

namespace fuzzrel {

/// Base of every error thrown by the library. The CLI maps each subclass to
/// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (config file, CSV table).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside their admissible range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed or produced an inconsistent answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// No alpha level yields a cut inside the requested target interval.
class NoContainmentError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A higher-alpha interval escaped a lower-alpha interval.
class NestingViolation : public SolverError {
 public:
  using SolverError::SolverError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fuzzrel
