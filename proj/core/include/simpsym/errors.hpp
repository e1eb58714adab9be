#pragma once

#include <stdexcept>
#include <string>

namespace simpsym {

/// Rejected constructor or operation argument (non-finite, wrong sign, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The internal-node elimination denominator 1 - (omega*h)^2/8 vanished.
struct SingularEliminationError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A run was requested outside the window 0 < omega*h < 2*sqrt(2).
struct StabilityWindowError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A propagator handed to the conserved-form construction has det != 1.
struct NotSymplecticError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A propagator handed to the conserved-form construction has unequal
/// diagonal entries; the closed-form construction only covers alpha == delta.
struct UnsupportedFormError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Newton iteration ran out of iterations (or met a singular Jacobian after
/// making progress); carries the last iterate so callers can diagnose.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_iterate,
                   double last_residual)
      : std::runtime_error(what),
        last_iterate_(last_iterate),
        last_residual_(last_residual) {}

  double last_iterate() const { return last_iterate_; }
  double last_residual() const { return last_residual_; }

 private:
  double last_iterate_;
  double last_residual_;
};

}  // namespace simpsym
