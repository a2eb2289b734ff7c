#pragma once

// Smooth approximation of the Stokes multiplier near theta = pi/2 and the
// scalar error-function law for its real part.

#include "stokes/core/complex.hpp"
#include "stokes/core/erf.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/multiplier/c_function.hpp"

namespace stokes {

struct ApproxParams {
  Real omega;          // theta - pi/2
  Real alpha;          // 2 N_o - 1 - 2 pi |z|
  Complex gamma_decay; // 1 + i e^{i theta}
  Complex c_val;       // c(theta + pi/2)
  Complex b0;
  Complex c0;
  long nu = 1;         // 2 N_o - 1
  Real mu;             // 2 pi |z| + alpha
};

inline ApproxParams approx_params(const EvalPoint& point, long n_opt, const PrecisionContext& ctx) {
  if (n_opt < 1) throw DomainError("approx_params: N_o must be >= 1");
  if (point.theta_over_pi_exact() == 0) throw DomainError("approx_params: theta must lie in (0, pi)");
  const Bits p = ctx.working_bits();
  const Real two_pi_mod = pi(p) * 2 * point.modulus(p);
  const mpq_class w_over_pi = point.theta_over_pi_exact() - mpq_class(1, 2);

  ApproxParams a{Real(w_over_pi, p) * pi(p), Real(2 * n_opt - 1, p) - two_pi_mod,
                 Complex(p), Complex(p), Complex(p), Complex(p), 2 * n_opt - 1, Real(p)};
  a.mu = two_pi_mod + a.alpha;
  if (point.on_stokes_line()) {
    // gamma and c vanish; B0 and C0 take their limiting values
    a.b0 = Complex(Real(2, p) / 3 - a.alpha, Real(p));
    a.c0 = Complex(Real(7, p) / 6 - a.alpha, Real(p));
    return a;
  }
  a.gamma_decay = Complex(1, 0, p) + expi(point.theta(p)).times_i();
  a.c_val = c_of_omega(a.omega, ctx);
  const Complex one(1, 0, p);
  const Complex e_minus = expi(-a.omega);  // e^{-i omega}
  a.b0 = expi(-a.omega * a.alpha) / (one - e_minus) + Complex::i(p) / a.c_val;
  a.c0 = a.b0 * expi(-a.omega * two_pi_mod) + expi(-a.omega * a.nu) / (one + e_minus);
  return a;
}

/// Range of theta/pi where the approximation is offered.
inline bool stokes_approx_in_range(const EvalPoint& point) {
  const mpq_class& t = point.theta_over_pi_exact();
  return t >= mpq_class(1, 4) && t <= mpq_class(17, 20);
}

/// S ~ 1/2 + erf[c(theta + pi/2) sqrt(pi |z|)]/2 - i C0 e^{-2 pi gamma |z|} / (2 pi sqrt|z|).
inline Complex stokes_approx(const EvalPoint& point, long n_opt, const PrecisionContext& ctx) {
  if (!stokes_approx_in_range(point)) throw DomainError("stokes_approx: theta/pi must lie in [0.25, 0.85]");
  const Bits p = ctx.working_bits();
  const ApproxParams a = approx_params(point, n_opt, ctx);
  const Real mod = point.modulus(p);
  const Real root = sqrt(mod);
  const Complex arg = a.c_val * sqrt(pi(p) * mod);
  Complex s = erf_complex(arg, ctx, abs(arg).to_double() + 1.0) / 2 + Real(1, p) / 2;
  Complex decay = exp(-(a.gamma_decay * (pi(p) * 2 * mod)));
  s -= (a.c0 * decay).times_i() / (pi(p) * 2 * root);
  return s;
}

/// Re S ~ 1/2 + erf[(theta - pi/2) sqrt(pi |z|)]/2.
inline Real erf_law(const EvalPoint& point, const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  const Real w = Real(point.theta_over_pi_exact() - mpq_class(1, 2), p) * pi(p);
  return erf(w * sqrt(pi(p) * point.modulus(p))) / 2 + Real(1, p) / 2;
}

}  // namespace stokes
