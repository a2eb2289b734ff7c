#pragma once

#include <cmath>

#include "stokes/core/complex.hpp"
#include "stokes/core/precision.hpp"

namespace stokes {

/// c as a function of omega = phi - pi: the root of
///   c^2 / 2 = 1 + i omega - e^{i omega}
/// with c(0) = 0 and c'(0) = 1, written c = omega sqrt(q(omega)),
/// q = 2 (1 + i omega - e^{i omega}) / omega^2 = 1 + i omega/3 + ...
/// q stays in the right half-plane for |omega| <= pi/2, so the principal
/// root is the continuous branch there.
inline Complex c_of_omega(const Real& omega, const PrecisionContext& ctx) {
  const Bits out = ctx.working_bits();
  if (omega.is_zero()) return Complex(out);
  // 1 + i omega - e^{i omega} ~ omega^2/2 cancels about 2 log10(1/|omega|) digits
  const double lw = std::log10(std::fabs(omega.to_double()));
  const long extra = lw < 0 ? static_cast<long>(std::ceil(-2.0 * lw)) + 5 : 5;
  const Bits work = ctx.with_extra_guard(extra).working_bits();
  const Real w = omega.at(work);
  Complex num(Real(1, work), w);
  num -= expi(w);
  Complex q = num * 2 / (w * w);
  return (sqrt(q) * w).at(out);
}

/// c(phi) = c_of_omega(phi - pi).
inline Complex c_function(const Real& phi, const PrecisionContext& ctx) {
  const Bits p = std::max(phi.precision(), ctx.working_bits()) + 32;
  return c_of_omega(phi.at(p) - pi(p), ctx);
}

/// omega + i omega^2/6 - omega^3/36 - i omega^4/270: the local expansion near
/// omega = 0, kept as a check on the closed form.
inline Complex c_quartic_series(const Real& omega) {
  const Real w2 = omega * omega;
  Real re = omega - w2 * omega / 36;
  Real im = w2 / 6 - w2 * w2 / 270;
  return Complex(re, im);
}

}  // namespace stokes
