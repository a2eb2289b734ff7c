#pragma once

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/special/incomplete_gamma.hpp"

namespace stokes {

/// T_nu(point) for odd nu >= 1.
struct TerminantRequest {
  long nu = 1;
  Complex point;

  TerminantRequest(long nu_, Complex point_) : nu(nu_), point(std::move(point_)) { validate(); }

  void validate() const {
    if (nu < 1 || nu % 2 == 0) throw DomainError("TerminantRequest: nu must be a positive odd integer");
    if (point.is_zero()) throw DomainError("TerminantRequest: point must be nonzero");
  }
};

/// -Gamma(nu) / (2 pi i) = i (nu-1)! / (2 pi): the terminant prefactor
/// e^{pi i nu} Gamma(nu) / (2 pi i) with e^{pi i nu} = -1 for odd nu.
inline Complex terminant_prefactor(long nu, Bits prec) {
  Real mag = factorial(static_cast<unsigned long>(nu - 1), prec) / (pi(prec) * 2);
  return Complex(Real(prec), mag);
}

/// e^{x} T_nu(x), principal branch.
inline Complex terminant_scaled(const TerminantRequest& req, const PrecisionContext& ctx) {
  req.validate();
  const Bits p = ctx.working_bits();
  return terminant_prefactor(req.nu, p) *
         upper_incomplete_gamma_scaled(IncGammaRequest(req.nu - 1, req.point), ctx);
}

/// T_nu(x) = e^{pi i nu} Gamma(nu) / (2 pi i) * Gamma(1 - nu, x), principal branch.
inline Complex terminant(const TerminantRequest& req, const PrecisionContext& ctx) {
  req.validate();
  const Bits p = ctx.working_bits();
  return terminant_prefactor(req.nu, p) * upper_incomplete_gamma(IncGammaRequest(req.nu - 1, req.point), ctx);
}

/// Gamma(-n, x e^{2 pi i}) - Gamma(-n, x) = -2 pi i (-1)^n / n!: the jump of the
/// principal branch across the negative real axis.
inline Complex incgamma_continuation_jump(long n, Bits prec) {
  Real mag = pi(prec) * 2 / factorial(static_cast<unsigned long>(n), prec);
  if (n % 2 == 0) mag = -mag;
  return Complex(Real(prec), mag);
}

}  // namespace stokes
