#ifndef SEQFORGE_ERRORS_HPP_
#define SEQFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace seqforge {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A sequence/spectrum length that violates a structural requirement
/// (P = 0, odd spectrum length, ...).
class InvalidLengthError : public Error {
 public:
  using Error::Error;
};

/// A length outside the family a constructor supports (e.g. Frank
/// sequences exist only for perfect-square lengths).
class UnsupportedLengthError : public Error {
 public:
  using Error::Error;
};

/// Samples handed to Sequence that are not unit modulus.
class UnitModulusError : public Error {
 public:
  using Error::Error;
};

/// A metric evaluated where it is undefined (PSL of a length-1 sequence).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// A correlation profile that cannot be processed (zero main lobe).
class InvalidProfileError : public Error {
 public:
  using Error::Error;
};

/// Mismatched operand sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed; indicates a bug, not bad user input.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// An experiment plan that fails validation.
class PlanValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem/stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An operation invoked with inputs that violate its preconditions.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqforge

#endif  // SEQFORGE_ERRORS_HPP_
