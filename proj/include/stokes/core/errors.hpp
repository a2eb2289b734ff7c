#pragma once

#include <stdexcept>
#include <string>

namespace stokes {

/// Input outside the domain of an operation (zero argument to log, point on a
/// branch cut where the formula excludes it, sector violations, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative process (adaptive sum, continued fraction, quadrature) did not
/// reach its target. Carries the error estimate that was achieved.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_estimate)
      : std::runtime_error(what), achieved_(achieved_estimate) {}

  double achieved_estimate() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// The requested accuracy would need more working digits than allowed.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, long required_guard_digits)
      : std::runtime_error(what), required_(required_guard_digits) {}

  long required_guard_digits() const noexcept { return required_; }

 private:
  long required_;
};

}  // namespace stokes
