#pragma once

// Upper incomplete gamma Gamma(-n, x) for integer n >= 0, principal branch,
// plus an independent quadrature route used as a test oracle.

#include <cmath>
#include <sstream>
#include <utility>
#include <string>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/core/tanh_sinh.hpp"
#include "stokes/special/exp_integral.hpp"

namespace stokes {

/// Gamma(a, point) with a = -n.
struct IncGammaRequest {
  long n = 0;
  Complex point;

  IncGammaRequest(long n_, Complex point_) : n(n_), point(std::move(point_)) { validate(); }

  void validate() const {
    if (n < 0) throw DomainError("IncGammaRequest: n must be >= 0");
    if (point.is_zero()) throw DomainError("IncGammaRequest: point must be nonzero");
  }
};

namespace detail {

/// Decimal digits the downward recurrence can lose: each step from
/// Gamma(1-j) to Gamma(-j) amplifies relative error by about max(1, |x|/j).
inline long recurrence_extra_digits(long n, double modulus) {
  double loss = 0.0;
  const double lx = std::log(modulus);
  for (long j = 1; j <= n; ++j) loss += std::max(0.0, lx - std::log(static_cast<double>(j)));
  return static_cast<long>(std::ceil(loss / 2.302585092994046)) + 5;
}

}  // namespace detail

/// e^x Gamma(-n, x) by the downward recurrence
///   e^x Gamma(-j, x) = (x^{-j} - e^x Gamma(1-j, x)) / j
/// started from e^x E1(x). The scaled form keeps magnitudes tame for |x| large.
inline Complex upper_incomplete_gamma_scaled(const IncGammaRequest& req, const PrecisionContext& ctx) {
  req.validate();
  const long extra = detail::recurrence_extra_digits(req.n, abs(req.point).to_double());
  if (extra > ctx.max_extra_guard()) {
    std::ostringstream msg;
    msg << "upper_incomplete_gamma: recurrence to n = " << req.n << " needs " << extra
        << " guard digits (cap " << ctx.max_extra_guard() << ")";
    throw PrecisionError(msg.str(), extra);
  }
  const PrecisionContext inner = ctx.with_extra_guard(extra);
  const Bits work = inner.working_bits();
  const Complex x = req.point.at(work);

  Complex u = exp_integral_e1_scaled(x, inner);
  if (req.n == 0) return u.at(ctx.working_bits());
  const Complex inv_x = 1 / x;
  Complex inv_pow(1, 0, work);  // x^{-j}
  for (long j = 1; j <= req.n; ++j) {
    inv_pow *= inv_x;
    u = (inv_pow - u) / j;
  }
  return u.at(ctx.working_bits());
}

/// e^x Gamma(-n, x) and e^{-x} Gamma(-n, -x) together, sharing the E1 series
/// pass when both points take the series route.
inline std::pair<Complex, Complex> upper_incomplete_gamma_scaled_pair(long n, const Complex& x,
                                                                     const PrecisionContext& ctx) {
  IncGammaRequest plus(n, x);
  IncGammaRequest minus(n, -x);
  plus.validate();
  minus.validate();
  const long extra = detail::recurrence_extra_digits(n, abs(x).to_double());
  if (extra > ctx.max_extra_guard()) return {upper_incomplete_gamma_scaled(plus, ctx), upper_incomplete_gamma_scaled(minus, ctx)};
  const PrecisionContext inner = ctx.with_extra_guard(extra);
  const Complex xw = x.at(inner.working_bits());
  if (!e1_prefers_series(xw, inner) || !e1_prefers_series(-xw, inner))
    return {upper_incomplete_gamma_scaled(plus, ctx), upper_incomplete_gamma_scaled(minus, ctx)};

  auto [u, v] = e1_scaled_series_pair(xw, inner);
  const Complex inv_x = 1 / xw;
  Complex inv_pow(1, 0, inner.working_bits());  // x^{-j}
  for (long j = 1; j <= n; ++j) {
    inv_pow *= inv_x;
    u = (inv_pow - u) / j;
    v = ((j % 2 ? -inv_pow : inv_pow) - v) / j;  // (-x)^{-j}
  }
  return {u.at(ctx.working_bits()), v.at(ctx.working_bits())};
}

/// Principal-branch Gamma(-n, x).
inline Complex upper_incomplete_gamma(const IncGammaRequest& req, const PrecisionContext& ctx) {
  if (req.n == 0) return exp_integral_e1(req.point, ctx);
  Complex scaled = upper_incomplete_gamma_scaled(req, ctx);
  Complex r = exp(-req.point.at(ctx.working_bits())) * scaled;
  require_finite(r, "upper_incomplete_gamma");
  return r;
}

/// Fixed accuracy target of the quadrature oracle, independent of ctx.
inline constexpr long kOracleDigits = 35;

namespace detail {

/// Gamma(a, z) = z^a e^{-z} / Gamma(1-a) * int_0^inf t^{-a} e^{-t} / (z + t) dt,
/// valid for |arg z| < pi and Re a < 1. `power` evaluates t^{-a}; `log_scale`
/// is a double estimate of log(int_0^inf t^{-a} e^{-t} dt) used to truncate
/// the range.
template <class Power>
Complex incgamma_integral(Power&& power, double minus_a, const Complex& z,
                          const Complex& prefactor, const PrecisionContext& ctx) {
  if (z.is_zero() || (z.im().is_zero() && z.re().sign() < 0))
    throw DomainError("incgamma_oracle_quadrature: point on the branch cut (|arg z| < pi required)");
  const long digits = std::max<long>(ctx.digits(), kOracleDigits + 10);
  const Bits work = digits_to_bits(digits + 10);
  const Real tol = pow10(-kOracleDigits - 3, work);
  const double zmod = abs(z).to_double();

  // W: the integrand t^{-a} e^{-t} has fallen 45+ digits below its bulk.
  const double bulk = std::lgamma(minus_a + 1.0);
  double w = std::max(1.0, minus_a + 1.0);
  while (minus_a * std::log(w) - w - bulk > -(kOracleDigits + 10) * 2.302585092994046 - std::log(1.0 + zmod))
    w += 1.0;

  const Complex zw = z.at(work);
  auto integrand = [&](const Real& t) { return power(t) * exp(-t) / (zw + t); };

  TanhSinh rule(work, 16);
  // Split where the pole -z sits closest to the path and where the bulk peaks.
  const double split = std::min(w * 0.5, std::max(1.0, std::min(zmod, minus_a + 1.0)));
  const Real a(0, work);
  const Real s(split, work);
  const Real b(w, work);
  auto left = rule.integrate(integrand, a, s, tol);
  auto right = rule.integrate(integrand, s, b, tol, abs(left.value));
  return (prefactor.at(work) * (left.value + right.value)).at(ctx.working_bits());
}

}  // namespace detail

/// Gamma(-n, point) by tanh-sinh quadrature of the Stieltjes-type integral
/// representation. Accurate to about 35 digits regardless of ctx; meant to
/// check upper_incomplete_gamma, not to replace it.
inline Complex incgamma_oracle_quadrature(const IncGammaRequest& req, const PrecisionContext& ctx) {
  req.validate();
  const long digits = std::max<long>(ctx.digits(), kOracleDigits + 10);
  const Bits work = digits_to_bits(digits + 10);
  const Complex z = req.point.at(work);
  if (z.im().is_zero() && z.re().sign() < 0)
    throw DomainError("incgamma_oracle_quadrature: point on the branch cut (|arg z| < pi required)");
  // z^{-n} e^{-z} / n!
  Complex pref = pow(z, -req.n) * exp(-z) / factorial(static_cast<unsigned long>(req.n), work);
  const long n = req.n;
  auto power = [n](const Real& t) { return pow(t, n); };
  return detail::incgamma_integral(power, static_cast<double>(n), z, pref, ctx);
}

/// Gamma(1/2, z) by the same quadrature; only used to cross-check erf.
inline Complex incgamma_half_oracle_quadrature(const Complex& point, const PrecisionContext& ctx) {
  const long digits = std::max<long>(ctx.digits(), kOracleDigits + 10);
  const Bits work = digits_to_bits(digits + 10);
  const Complex z = point.at(work);
  if (z.is_zero() || (z.im().is_zero() && z.re().sign() < 0))
    throw DomainError("incgamma_half_oracle_quadrature: point on the branch cut");
  // z^{1/2} e^{-z} / Gamma(1/2)
  Complex pref = sqrt(z) * exp(-z) / sqrt(pi(work));
  auto power = [](const Real& t) { return 1 / sqrt(t); };
  return detail::incgamma_integral(power, -0.5, z, pref, ctx);
}

}  // namespace stokes
