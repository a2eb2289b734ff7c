#pragma once

// Exponential integral E1 at complex argument, principal branch.
//
// Points on the negative real axis are taken on the upper side of the cut
// (arg x = +pi), matching the principal-value convention of arg/log.

#include <cmath>
#include <sstream>
#include <utility>

#include "stokes/core/complex.hpp"
#include "stokes/core/constants.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"

namespace stokes {

/// Tunables for the E1 route selection.
struct E1Options {
  /// Series while |x| cos(arg x / 2) <= series_scale * (working digits + 10);
  /// the continued fraction needs about D^2 / (|x| cos^2(arg x / 2)) steps and
  /// the series about e|x| terms, and this is where the timings cross.
  double series_scale = 0.24;
  /// Within this fraction of pi of the negative axis the continued fraction
  /// stalls; the series is used at any modulus.
  double cut_band = 0.05;
};

namespace detail {

/// Extra decimal digits the Maclaurin series of E1 loses at x: the partial
/// sums reach ~e^{|x|} while E1(x) ~ e^{-x}/x.
inline long e1_series_extra_digits(const Complex& x) {
  const double m = abs(x).to_double();
  const double re = x.re().to_double();
  return static_cast<long>(std::ceil(0.4343 * (m + re) + std::log10(1.0 + m))) + 5;
}

/// log of |x|^k / (k k!), the modulus of the k-th series term.
inline double series_term_log(double mod, long k) {
  const double kd = static_cast<double>(k);
  return kd * std::log(mod) - std::lgamma(kd + 1) - std::log(kd);
}

inline Bits e1_series_bits(const Complex& x, const PrecisionContext& ctx) {
  const long extra = e1_series_extra_digits(x);
  if (extra > ctx.max_extra_guard()) {
    std::ostringstream msg;
    msg << "exp_integral_e1: series at |x| = " << abs(x).to_double() << " needs " << extra
        << " guard digits (cap " << ctx.max_extra_guard() << ")";
    throw PrecisionError(msg.str(), extra);
  }
  return digits_to_bits(ctx.digits() + ctx.guard() + extra);
}

}  // namespace detail

/// e^x E1(x) from E1(x) = -gamma_E - log x - sum_{k>=1} (-x)^k / (k k!).
inline Complex e1_scaled_series(const Complex& x, const PrecisionContext& ctx) {
  if (x.is_zero()) throw DomainError("exp_integral_e1: zero argument");
  const Bits work = detail::e1_series_bits(x, ctx);
  const Complex xw = x.at(work);
  const Complex minus_x = -xw;
  Complex power = minus_x;  // (-x)^k / k!
  Complex sum = minus_x;
  const double log_eps = -static_cast<double>(work) * M_LN2;
  const double mod = abs(x).to_double();
  for (long k = 2;; ++k) {
    power *= minus_x;
    power /= k;
    Complex term = power / k;
    sum += term;
    if (static_cast<double>(k) > mod && detail::series_term_log(mod, k) < log_eps) break;
    if (k > 1000000) throw ConvergenceError("exp_integral_e1: series did not terminate", 0.0);
  }
  Complex e1 = -(log(xw) + sum);
  e1 -= euler_gamma(work);
  return (exp(xw) * e1).at(ctx.working_bits());
}

/// e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))) by the forward Wallis
/// recurrence A_k = b_k A_{k-1} - (k-1)^2 A_{k-2} (same for B), in place on
/// preallocated MPFR values; A/B is compared every few steps.
/// Throws ConvergenceError once `max_iterations` (default 10|x| + 2000) are
/// exhausted; convergence slows down towards the negative real axis.
inline Complex e1_scaled_continued_fraction(const Complex& x, const PrecisionContext& ctx,
                                            long max_iterations = 0) {
  if (x.is_zero()) throw DomainError("exp_integral_e1: zero argument");
  const Bits work = digits_to_bits(ctx.digits() + ctx.guard() + 10);
  const Complex xw = x.at(work);
  const long eps_exp = 8 - static_cast<long>(work);
  const long cap =
      max_iterations > 0 ? max_iterations : static_cast<long>(10.0 * abs(x).to_double()) + 2000;
  constexpr long kCheckEvery = 4;
  constexpr mpfr_rnd_t rnd = MPFR_RNDN;

  // (ar, ai) = A_k, (pr, pi_) = A_{k-1}; likewise B
  Real ar(1, work), ai(0, work), pr(0, work), pi_(0, work);
  Real br(xw.re()), bi(xw.im()), qr(1, work), qi(0, work);
  mpfr_add_ui(br.raw(), br.raw(), 1, rnd);
  Real t1(work), t2(work), bre(work);
  Complex f = Complex(ar, ai) / Complex(br, bi);
  Complex prev(work);
  Real last(1, 64);

  auto step = [&](Real& vr, Real& vi, Real& wr, Real& wi, long a) {
    // (vr, vi) <- b (vr, vi) + a (wr, wi); (wr, wi) <- old (vr, vi)
    mpfr_mul(t1.raw(), bre.raw(), vr.raw(), rnd);
    mpfr_fms(t1.raw(), xw.im().raw(), vi.raw(), t1.raw(), rnd);
    mpfr_neg(t1.raw(), t1.raw(), rnd);
    mpfr_mul(t2.raw(), bre.raw(), vi.raw(), rnd);
    mpfr_fma(t2.raw(), xw.im().raw(), vr.raw(), t2.raw(), rnd);
    mpfr_mul_si(wr.raw(), wr.raw(), a, rnd);
    mpfr_mul_si(wi.raw(), wi.raw(), a, rnd);
    mpfr_add(wr.raw(), wr.raw(), t1.raw(), rnd);
    mpfr_add(wi.raw(), wi.raw(), t2.raw(), rnd);
    mpfr_swap(wr.raw(), vr.raw());
    mpfr_swap(wi.raw(), vi.raw());
  };

  for (long k = 1; k <= cap; ++k) {
    mpfr_add_si(bre.raw(), xw.re().raw(), 2 * k + 1, rnd);
    const long a = -k * k;
    step(ar, ai, pr, pi_, a);
    step(br, bi, qr, qi, a);
    // keep exponents bounded; the ratio is unchanged
    const mpfr_exp_t e = mpfr_get_exp(br.raw());
    if (e > 1000000 || e < -1000000) {
      for (Real* v : {&ar, &ai, &pr, &pi_, &br, &bi, &qr, &qi}) mpfr_mul_2si(v->raw(), v->raw(), -e, rnd);
    }
    if (k % kCheckEvery) continue;
    prev = std::move(f);
    f = Complex(ar, ai) / Complex(br, bi);
    Complex diff = f - prev;
    last = abs(diff.re());
    if (abs(diff.im()) > last) last = abs(diff.im());
    Real scale = abs(f.re());
    if (abs(f.im()) > scale) scale = abs(f.im());
    if (last <= ldexp(scale, eps_exp)) return f.at(ctx.working_bits());
  }
  throw ConvergenceError("exp_integral_e1: continued fraction did not converge", last.to_double());
}

/// True when the Maclaurin series is the cheaper route at x.
inline bool e1_prefers_series(const Complex& x, const PrecisionContext& ctx, const E1Options& opt = {}) {
  const double mod = abs(x).to_double();
  const double ang = std::fabs(arg(x).to_double());
  if (ang >= (1.0 - opt.cut_band) * M_PI) return true;
  const double digits = static_cast<double>(ctx.digits() + ctx.guard() + 10);
  return mod * std::cos(ang / 2) <= opt.series_scale * digits;
}

/// e^x E1(x) and e^{-x} E1(-x) from one pass: the two Maclaurin sums share
/// their terms and differ only in the sign of the odd ones.
inline std::pair<Complex, Complex> e1_scaled_series_pair(const Complex& x, const PrecisionContext& ctx) {
  if (x.is_zero()) throw DomainError("exp_integral_e1: zero argument");
  const Bits work = std::max(detail::e1_series_bits(x, ctx), detail::e1_series_bits(-x, ctx));
  const Complex xw = x.at(work);
  Complex power = xw;  // x^k / k!
  Complex odd = xw;
  Complex even(work);
  const double log_eps = -static_cast<double>(work) * M_LN2;
  const double mod = abs(x).to_double();
  for (long k = 2;; ++k) {
    power *= xw;
    power /= k;
    Complex term = power / k;
    (k % 2 ? odd : even) += term;
    if (static_cast<double>(k) > mod && detail::series_term_log(mod, k) < log_eps) break;
    if (k > 1000000) throw ConvergenceError("exp_integral_e1: series did not terminate", 0.0);
  }
  const Real gamma_e = euler_gamma(work);
  const Complex minus_x = -xw;
  Complex e1_plus = -(log(xw) + (even - odd));
  e1_plus -= gamma_e;
  Complex e1_minus = -(log(minus_x) + (even + odd));
  e1_minus -= gamma_e;
  return {(exp(xw) * e1_plus).at(ctx.working_bits()), (exp(minus_x) * e1_minus).at(ctx.working_bits())};
}

/// e^x E1(x), choosing the series or the continued fraction.
inline Complex exp_integral_e1_scaled(const Complex& x, const PrecisionContext& ctx,
                                      const E1Options& opt = {}) {
  if (x.is_zero()) throw DomainError("exp_integral_e1: zero argument");
  if (e1_prefers_series(x, ctx, opt)) return e1_scaled_series(x, ctx);
  try {
    return e1_scaled_continued_fraction(x, ctx);
  } catch (const ConvergenceError&) {
    return e1_scaled_series(x, ctx);
  }
}

/// Principal-branch E1(x).
inline Complex exp_integral_e1(const Complex& x, const PrecisionContext& ctx,
                               const E1Options& opt = {}) {
  Complex scaled = exp_integral_e1_scaled(x, ctx, opt);
  Complex r = exp(-x.at(ctx.working_bits())) * scaled;
  require_finite(r, "exp_integral_e1");
  return r;
}

}  // namespace stokes
