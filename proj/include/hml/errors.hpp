#pragma once

#include <stdexcept>
#include <string>

namespace hml {

/// Argument outside the mathematical domain of an operation
/// (invalid parameter range, divergent image series, pole hit).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A series or quadrature failed to reach its tolerance within budget.
class NonConvergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A finite-difference stencil would leave the operator's base interval.
class StepTooSmall : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed command-line input (maps to exit code 2).
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hml
