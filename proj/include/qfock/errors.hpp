#pragma once

#include <stdexcept>
#include <string>

namespace qfock {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A real quaternion belongs to every slice; the caller must pick one.
struct RealInputError : Error {
  using Error::Error;
};

/// The two imaginary units of a split frame are not orthogonal.
struct NonOrthogonalUnitsError : Error {
  using Error::Error;
};

/// Two split representations live on different slice frames.
struct SliceMismatchError : Error {
  using Error::Error;
};

/// A series summation exceeded its term budget before the tail bound held.
struct NoConvergenceBudgetError : Error {
  using Error::Error;
};

/// The quadrature rule cannot integrate the requested degree exactly.
struct InsufficientRuleError : Error {
  using Error::Error;
};

/// A composition symbol is not a valid affine map of the slice.
struct NotAffineError : Error {
  using Error::Error;
};

/// A parameter that must be unimodular is not.
struct NotUnimodularError : Error {
  using Error::Error;
};

/// Conjugation parameters violate their validity constraints.
struct InvalidParamsError : Error {
  using Error::Error;
};

/// The requested certificate is not defined for these parameters.
struct UnsupportedParamsError : Error {
  using Error::Error;
};

/// The operator failed its boundedness gate.
struct UnboundedOperatorError : Error {
  using Error::Error;
};

/// A nonzero coefficient seed cannot satisfy the phase constraint.
struct PhaseConditionUnsatisfiableError : Error {
  using Error::Error;
};

/// The anti-linear classifier requires a nonconstant symbol.
struct ConstantSymbolError : Error {
  using Error::Error;
};

/// Scenario configuration failed to parse or validate.
struct ConfigError : Error {
  using Error::Error;
};

/// A report or series file could not be read or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace qfock
