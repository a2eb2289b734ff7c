#pragma once

#include <algorithm>
#include <string>

#include "stokes/core/errors.hpp"
#include "stokes/core/real.hpp"

namespace stokes {

/// Working precision and tolerance for one evaluation.
///
/// Arithmetic is carried at `digits + guard` decimal digits; results are meant
/// to be trusted (and reported) at `digits`. Routines whose series cancel add
/// their own extra guard on top, never more than `max_extra_guard`.
class PrecisionContext {
 public:
  static constexpr long kMinDigits = 16;
  static constexpr long kMinGuard = 10;

  explicit PrecisionContext(long digits = 70, long guard = 20)
      : digits_(digits), guard_(guard) {
    if (digits < kMinDigits)
      throw DomainError("PrecisionContext: digits must be >= " + std::to_string(kMinDigits));
    if (guard < kMinGuard)
      throw DomainError("PrecisionContext: guard must be >= " + std::to_string(kMinGuard));
    tol_ = pow10(1 - digits_, working_bits());
  }

  long digits() const { return digits_; }
  long guard() const { return guard_; }
  long max_extra_guard() const { return max_extra_guard_; }
  const Real& tol() const { return tol_; }

  Bits working_bits() const { return digits_to_bits(digits_ + guard_); }
  Bits report_bits() const { return digits_to_bits(digits_); }

  PrecisionContext with_tol(const Real& tol) const {
    if (tol.sign() <= 0) throw DomainError("PrecisionContext: tol must be positive");
    PrecisionContext c(*this);
    c.tol_ = tol.at(working_bits());
    return c;
  }

  /// Same tolerance semantics at a different digit count (tol re-derived).
  PrecisionContext with_digits(long digits) const {
    PrecisionContext c(digits, guard_);
    c.max_extra_guard_ = max_extra_guard_;
    return c;
  }

  /// Raises the guard while keeping digits and tolerance.
  PrecisionContext with_extra_guard(long extra) const {
    PrecisionContext c(*this);
    c.guard_ = guard_ + std::max(0L, extra);
    c.tol_ = tol_.at(c.working_bits());
    return c;
  }

  PrecisionContext with_max_extra_guard(long cap) const {
    PrecisionContext c(*this);
    c.max_extra_guard_ = cap;
    return c;
  }

 private:
  long digits_;
  long guard_;
  long max_extra_guard_ = 4000;
  Real tol_;
};

/// Mixed absolute/relative comparison: |a-b| <= tol * max(1, |a|, |b|).
inline bool approx_equal(const Real& a, const Real& b, const Real& tol) {
  Real scale = max(Real(1, tol.precision()), max(abs(a), abs(b)));
  return abs(a - b) <= tol * scale;
}

inline bool approx_equal(const Real& a, const Real& b, const PrecisionContext& ctx) {
  return approx_equal(a, b, ctx.tol());
}

}  // namespace stokes
