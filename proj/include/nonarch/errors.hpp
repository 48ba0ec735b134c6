#pragma once

#include <stdexcept>
#include <string>

namespace nonarch {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed request: wrong sizes, mixed fields, bad parameters, exceeded enumeration budget.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Input outside a map's domain (e.g. beta applied to a series with negative valuation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Multiplicative inverse of zero in F_q.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Inversion of a series indistinguishable from zero at its precision.
class CannotInvertError : public Error {
 public:
  using Error::Error;
};

/// The requested answer is not determined at the available precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Coincident points handed to a difference quotient that needs distinct ones.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// An iteration budget ran out before the computation settled.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace nonarch
