#pragma once

#include <cmath>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/expansion/omega.hpp"
#include "stokes/expansion/stirling.hpp"
#include "stokes/expansion/truncation.hpp"
#include "stokes/special/terminant.hpp"

namespace stokes {

/// Digits for the exact multiplier: the subtraction leaves a quantity of size
/// e^{-2 pi |z| sin theta}, so 40 digits beyond that scale are kept.
inline long stokes_exact_digits(const EvalPoint& point, const PrecisionContext& ctx) {
  const long need = 40 + static_cast<long>(std::ceil(2 * M_PI * point.modulus_double() * 0.4342944819032518));
  return std::max(ctx.digits(), need);
}

namespace detail {

inline void require_multiplier_point(const EvalPoint& point, const char* who) {
  if (point.theta_over_pi_exact() == 0) throw DomainError(std::string(who) + ": theta must lie in (0, pi)");
  if (optimal_truncation(point.modulus_exact()) < 2) throw DomainError(std::string(who) + ": |z| too small (N_o < 2)");
}

}  // namespace detail

/// S(theta) = e^{-2 pi i z} {Omega(z) - sum_{r=1}^{N_o - 1} B_2r / (2r (2r-1) z^{2r-1})}.
inline Complex stokes_exact(const EvalPoint& point, const PrecisionContext& ctx) {
  detail::require_multiplier_point(point, "stokes_exact");
  const PrecisionContext wide = ctx.with_digits(stokes_exact_digits(point, ctx));
  const Bits p = wide.working_bits();
  const Complex z = point.z(p);
  const long n_opt = optimal_truncation(point.modulus_exact());
  OmegaResult om = omega(point, TruncationPlan::optimal(point.modulus_exact()), wide);
  Complex tail = om.value - stirling_partial_sum(z, n_opt, wide);
  Complex s = exp(-(z * (pi(p) * 2)).times_i()) * tail;
  return s.at(ctx.working_bits());
}

/// e^{2 pi i z} T_nu(2 pi i z) - e^{-2 pi i z} T_nu(-2 pi i z), nu = 2 N_o - 1,
/// with T_nu continued across the Stokes line (principal value + 1 above it).
inline Complex remainder_terminant_leading(const EvalPoint& point, long n_opt, const PrecisionContext& ctx) {
  detail::require_multiplier_point(point, "remainder_terminant_leading");
  if (n_opt < 1) throw DomainError("remainder_terminant_leading: N_o must be >= 1");
  const Bits p = ctx.working_bits();
  const Complex x = (point.z(p) * (pi(p) * 2)).times_i();
  const long nu = 2 * n_opt - 1;
  Complex r = terminant_scaled(TerminantRequest(nu, x), ctx) - terminant_scaled(TerminantRequest(nu, -x), ctx);
  if (point.sector() == Sector::upper) r += exp(x);
  return r;
}

}  // namespace stokes
