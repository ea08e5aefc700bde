#pragma once

#include <stdexcept>
#include <string>

namespace bt {

/// Operand shapes do not conform (matrix sizes, ambient dimensions, fields).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Elimination found no pivot where one was required.
struct SingularMatrixError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A well-formed input violates a theorem hypothesis (n_K bounds etc).
struct ConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A point outside the domain of a partially defined map.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// grass_slice input V with dim(V ∩ H) > 1.
struct GapCaseError : DomainError {
  using DomainError::DomainError;
};

/// kernel(M - I) is not one-dimensional.
struct KernelDimensionError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A floating-point reconstruction disagrees with its consistency checks
/// beyond tolerance (for example a frame solve for a non-isometric input).
struct InconsistentSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bt
