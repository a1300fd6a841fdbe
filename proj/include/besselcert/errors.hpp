#pragma once

#include <stdexcept>
#include <string>

namespace besselcert {

/// Argument outside the domain where an operation is defined or supported.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Order hits a gamma pole (negative integer) or violates the family's order range.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A located point (zero, critical point) would fall outside the evaluation window.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical evidence contradicting a proven statement: a sign change that must
/// exist was not found, or one that must not exist was.
class FalsificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace besselcert
