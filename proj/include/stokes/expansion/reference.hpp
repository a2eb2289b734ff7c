#pragma once

// Reference log Gamma: shift z far out with the recurrence, evaluate the exact
// expansion there with its own optimal plan and 20 more digits, shift back.

#include <cmath>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/expansion/omega.hpp"
#include "stokes/expansion/truncation.hpp"

namespace stokes {

inline constexpr long kReferenceExtraDigits = 20;

/// Shift m >= 0 with |z + m| >= (P+g) ln 10 / (2 pi) + 5.
inline long reference_shift(const Complex& z, const PrecisionContext& ctx) {
  const double target = (ctx.digits() + ctx.guard()) * detail::kLn10 / (2 * M_PI) + 5.0;
  const double x = z.re().to_double();
  const double y = z.im().to_double();
  if (y * y >= target * target) return 0;
  const double need = std::sqrt(target * target - y * y) - x;
  long m = std::max(0L, static_cast<long>(std::floor(need)));
  while (std::hypot(x + m, y) < target) ++m;
  return m;
}

/// log Gamma at a rectangular point with Im z >= 0, off the non-positive real
/// axis; result at ctx precision.
inline Complex log_gamma_reference_at(const Complex& z, const PrecisionContext& ctx) {
  if (z.im().sign() < 0) throw DomainError("log_gamma_reference: Im z must be >= 0");
  if (z.im().is_zero() && z.re().sign() <= 0)
    throw DomainError("log_gamma_reference: z on the non-positive real axis");
  const PrecisionContext ref = ctx.with_digits(ctx.digits() + kReferenceExtraDigits);
  const Bits p = ref.working_bits();
  const Complex zw = z.at(p);
  const long m = reference_shift(zw, ref);
  const Complex w = zw + m;
  const long n_terms = optimal_truncation(abs(w));
  OmegaResult om = omega_at(w, w.re().sign() < 0, n_terms, std::nullopt, ref);
  Complex result = om.value + log_gamma_elementary(w, ref);
  for (long j = 0; j < m; ++j) result -= log(zw + j);
  return result.at(ctx.working_bits());
}

inline Complex log_gamma_reference(const EvalPoint& point, const PrecisionContext& ctx) {
  return log_gamma_reference_at(point.z(ctx.working_bits() + 64), ctx);
}

/// Omega from the reference log Gamma.
inline Complex omega_reference(const EvalPoint& point, const PrecisionContext& ctx) {
  const PrecisionContext wide = ctx.with_extra_guard(10);
  const Complex z = point.z(wide.working_bits());
  return (log_gamma_reference_at(z, wide) - log_gamma_elementary(z, wide)).at(ctx.working_bits());
}

/// |Omega(z) + Omega(z e^{-pi i}) + log(1 - e^{2 pi i z})| for 0 < theta < pi.
/// z e^{-pi i} has argument theta - pi; Omega there is the conjugate of Omega
/// at the mirrored point |z| e^{i(pi - theta)}.
inline Real continuation_identity_residual(const EvalPoint& point, const TruncationPlan& plan,
                                           const PrecisionContext& ctx) {
  if (point.theta_over_pi_exact() == 0) throw DomainError("continuation_identity_residual: theta must be positive");
  const Bits p = ctx.working_bits();
  const EvalPoint mirror = point.mirrored();
  TruncationPlan mirror_plan = plan;
  mirror_plan.n_optimal = optimal_truncation(mirror.modulus_exact());
  Complex a = omega(point, plan, ctx).value;
  Complex b = omega(mirror, mirror_plan, ctx).value.conj();
  Complex l = -continuation_term(point.z(p), ctx);
  return abs(a + b + l);
}

}  // namespace stokes
