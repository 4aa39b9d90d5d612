#pragma once

#include <stdexcept>
#include <string>

namespace gmrfinfo {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Model parameters violate a structural requirement (positivity,
/// symmetry, positive-definiteness).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A spectrum or covariance is singular where a finite value is needed.
class SingularError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Energy budget or other constraint cannot be met.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmrfinfo
