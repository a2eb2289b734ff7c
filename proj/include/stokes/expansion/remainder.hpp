#pragma once

// The remainder R_N(z) after N terms of the Stirling series, as a sum over
// k >= 1 of incomplete-gamma pairs at x_k = 2 pi i k z (series route), or as
// a sum of real-line integrals (quadrature route, right half-plane only).

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "stokes/core/bernoulli.hpp"
#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/core/tanh_sinh.hpp"
#include "stokes/expansion/truncation.hpp"
#include "stokes/special/incomplete_gamma.hpp"
#include "stokes/special/terminant.hpp"

namespace stokes {

struct RemainderResult {
  Complex value;
  /// Bound on everything discarded beyond the last summed k (2x margin).
  Real tail_bound;
  /// Number of k terms summed explicitly.
  long terms = 0;
  /// True when the k > K tail was summed from its 1/k expansion.
  bool tail_summed = false;
};

namespace detail {

inline constexpr double kLn10 = 2.302585092994046;

/// sum_{k>K} k^{-(2N-2)} <= K^{-(2N-2)} * K/(2N-3): the geometric-majorant
/// factor, with the N = 1, 2 cases floored at 1.
inline long tail_denominator(long n_terms) { return std::max(1L, 2 * n_terms - 3); }

/// The k-th term (1/k) {U_n(x) - U_n(-x)} times the prefactor, n = 2N-2.
inline Complex remainder_series_term(const Complex& z, long k, long n, const Complex& prefactor,
                                     const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  Complex x = (z.at(p) * (pi(p) * (2 * k))).times_i();
  auto [plus, minus] = upper_incomplete_gamma_scaled_pair(n, x, ctx);
  return prefactor * (plus - minus) / k;
}

/// Hurwitz zeta values zeta(s, a) for s = s0, s0 + 2, ..., s0 + 2 (count-1),
/// integer a >= 1, by Euler-Maclaurin after shifting a past s + digits.
inline std::vector<Real> hurwitz_zeta_even_steps(long s0, long count, long a, const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  const long digits = ctx.digits() + ctx.guard();
  const long s_max = s0 + 2 * (count - 1);
  const long b = std::max(a, s_max + digits);
  const Real eps = pow10(-digits - 5, p);

  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(count));
  // direct part: sum_{j=a}^{b-1} j^{-s}, stepping s by 2 per output
  std::vector<Real> powers;
  std::vector<Real> inv_sq;
  for (long j = a; j < b; ++j) {
    Real inv = Real(1, p) / j;
    powers.push_back(pow(inv, s0));
    inv_sq.push_back(inv * inv);
  }
  const Real bb(b, p);
  const Real inv_b = 1 / bb;
  Real b_pow = pow(inv_b, s0);  // b^{-s}
  for (long i = 0; i < count; ++i) {
    const long s = s0 + 2 * i;
    Real sum(p);
    for (std::size_t j = 0; j < powers.size(); ++j) {
      sum += powers[j];
      powers[j] *= inv_sq[j];
    }
    sum += b_pow * bb / (s - 1);
    sum += b_pow / 2;
    // sum_m B_2m/(2m)! * s (s+1) ... (s+2m-2) * b^{-s-2m+1}
    Real rising(s, p);     // s (s+1) ... (s+2m-2)
    Real b_m = b_pow * inv_b;  // b^{-s-2m+1}
    Real fact(2, p);       // (2m)!
    for (long m = 1;; ++m) {
      Real term = bernoulli_even(m, ctx) / fact * rising * b_m;
      sum += term;
      if (abs(term) <= eps * abs(sum)) break;
      if (m > 4 * digits) throw ConvergenceError("hurwitz_zeta: Euler-Maclaurin did not settle", term.to_double());
      rising *= (s + 2 * m - 1);
      rising *= (s + 2 * m);
      b_m *= inv_b * inv_b;
      fact *= (2 * m + 1);
      fact *= (2 * m + 2);
    }
    out.push_back(sum);
    b_pow *= inv_b * inv_b;
  }
  return out;
}

/// sum_{k>K} of the remainder terms from their large-k expansion
///   (1/k){U_n(x_k) - U_n(-x_k)} ~ sum_{j even} 2 (n+j)!/n! (2 pi i z)^{-(n+1+j)} k^{-(n+2+j)},
/// valid once 2 pi |z| K is well past n and the working digit count.
inline std::pair<Complex, Real> remainder_tail_expansion(const Complex& z, long k_last, long n,
                                                         const Complex& prefactor, const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  const Complex x1 = (z.at(p) * (pi(p) * 2)).times_i();
  const Complex inv_x1 = 1 / x1;
  const Complex inv_x1_sq = inv_x1 * inv_x1;
  const Real target = ctx.tol() / 8;

  long batch = 32;
  std::vector<Real> zetas;
  Complex coef = pow(inv_x1, n + 1) * 2;  // 2 (n+j)!/n! x1^{-(n+1+j)}
  Complex sum(p);
  Real last_mag(p);
  for (long j = 0;; j += 2) {
    const long idx = j / 2;
    if (idx >= static_cast<long>(zetas.size())) {
      auto more = hurwitz_zeta_even_steps(n + 2 + j, batch, k_last + 1, ctx);
      zetas.insert(zetas.end(), more.begin(), more.end());
      batch *= 2;
    }
    Complex term = coef * zetas[static_cast<std::size_t>(idx)];
    Real mag = abs(term) * abs(prefactor);
    if (j > 0 && mag > last_mag) {
      std::ostringstream msg;
      msg << "remainder tail expansion stalled at K = " << k_last;
      throw ConvergenceError(msg.str(), last_mag.to_double());
    }
    sum += term;
    last_mag = mag;
    if (mag < target) break;
    coef *= inv_x1_sq;
    coef *= (n + j + 1);
    coef *= (n + j + 2);
  }
  return {prefactor * sum, last_mag * 2};
}

/// Estimated K at which the plain stopping rule fires, from the leading
/// large-k behaviour |term_k| ~ n!/(pi (2 pi |z|)^{n+1}) k^{-(n+2)}.
inline double predicted_adaptive_k(double modulus, long n_terms, const PrecisionContext& ctx) {
  const long n = 2 * n_terms - 2;
  const double log_a = std::lgamma(n + 1.0) - std::log(M_PI) - (n + 1.0) * std::log(2 * M_PI * modulus);
  const double log_tol = ctx.tol().log_abs();
  const double log_k =
      (log_a + std::log(4.0) - std::log(static_cast<double>(tail_denominator(n_terms))) - log_tol) / (n + 1.0);
  return std::max(std::exp(log_k), n / (2 * M_PI * modulus));
}

/// Above this predicted K the tail is summed from its expansion instead.
inline constexpr double kDirectSumLimit = 2000.0;

}  // namespace detail

/// R_N(z) by the incomplete-gamma series at a rectangular point. With an
/// explicit K exactly K terms are summed; otherwise terms are added until
/// |term_K| K/(2N-3) < tol/4 (or the tail is summed from its 1/k expansion
/// when that rule would need more than a couple of thousand terms).
/// Above the positive imaginary axis the principal-branch gammas give the
/// continued remainder R'_N.
inline RemainderResult remainder_series_at(const Complex& z, long n_terms, std::optional<long> k_terms,
                                           const PrecisionContext& ctx, long k_cap = 1000000) {
  if (z.is_zero() || z.on_negative_axis()) throw DomainError("remainder_series: z must be off the cut");
  if (n_terms < 1) throw DomainError("remainder_series: N must be >= 1");
  const Bits p = ctx.working_bits();
  const long n = 2 * n_terms - 2;
  const Complex prefactor = terminant_prefactor(2 * n_terms - 1, p);
  const long denom = detail::tail_denominator(n_terms);

  RemainderResult res{Complex(p), Real(p), 0, false};
  if (k_terms) {
    Complex last(p);
    for (long k = 1; k <= *k_terms; ++k) {
      last = detail::remainder_series_term(z, k, n, prefactor, ctx);
      res.value += last;
    }
    res.terms = *k_terms;
    res.tail_bound = abs(last) * *k_terms / denom * 2;
    return res;
  }

  const double modulus = abs(z).to_double();
  if (detail::predicted_adaptive_k(modulus, n_terms, ctx) > detail::kDirectSumLimit) {
    // 2 pi |z| (K+1) past twice the working digits (in nepers) plus n
    const double need = (2.0 * (ctx.digits() + ctx.guard()) * detail::kLn10 + n) / (2 * M_PI * modulus);
    const long k_last = std::max(16L, static_cast<long>(std::ceil(need)));
    if (k_last > k_cap) {
      std::ostringstream msg;
      msg << "remainder_series: tail expansion needs K = " << k_last << " above the cap " << k_cap;
      throw ConvergenceError(msg.str(), HUGE_VAL);
    }
    for (long k = 1; k <= k_last; ++k) res.value += detail::remainder_series_term(z, k, n, prefactor, ctx);
    auto [tail, bound] = detail::remainder_tail_expansion(z, k_last, n, prefactor, ctx);
    res.value += tail;
    res.tail_bound = bound;
    res.terms = k_last;
    res.tail_summed = true;
    return res;
  }

  const Real stop = ctx.tol() / 4;
  Real estimate(p);
  for (long k = 1; k <= k_cap; ++k) {
    Complex term = detail::remainder_series_term(z, k, n, prefactor, ctx);
    res.value += term;
    estimate = abs(term) * k / denom;
    if (estimate < stop) {
      res.terms = k;
      res.tail_bound = estimate * 2;
      return res;
    }
  }
  throw ConvergenceError("remainder_series: adaptive K reached the cap", (estimate * 2).to_double());
}

inline RemainderResult remainder_series(const EvalPoint& point, const TruncationPlan& plan,
                                        const PrecisionContext& ctx) {
  plan.validate();
  return remainder_series_at(point.z(ctx.working_bits()), plan.n_terms, plan.k_terms, ctx, plan.k_cap);
}

/// Sector margin of the quadrature route: theta must stay this far below pi/2.
inline constexpr double kQuadratureSectorMargin = 0.02;

/// R_N(z) by
///   2 (-1)^{N-1} z / (2 pi z)^{2N-2} sum_k k^{-(2N-2)} int_0^inf w^{2N-2} e^{-w} / (w^2 + 4 pi^2 k^2 z^2) dw,
/// each integral by tanh-sinh on [0, (2N-2) ln 2N + (P+g) ln 10]. Slow; a
/// cross-check of remainder_series for 0 <= theta <= pi/2 - 0.02 pi.
inline RemainderResult remainder_quadrature(const EvalPoint& point, const TruncationPlan& plan,
                                            const PrecisionContext& ctx) {
  plan.validate();
  if (point.theta_over_pi_exact() > mpq_class(1, 2) - mpq_class(1, 50))
    throw DomainError("remainder_quadrature: theta must be at most pi/2 - 0.02 pi");
  if (plan.n_terms < 2) throw DomainError("remainder_quadrature: N must be >= 2");
  const Bits p = ctx.working_bits();
  const long n = 2 * plan.n_terms - 2;
  const Complex z = point.z(p);
  const Complex two_pi_z = z * (pi(p) * 2);
  Complex prefactor = z * 2 / pow(two_pi_z, n);
  if (plan.n_terms % 2 == 0) prefactor = -prefactor;
  const Complex z_sq_4pi2 = two_pi_z * two_pi_z;

  const double upper = n * std::log(2.0 * plan.n_terms) + (ctx.digits() + ctx.guard()) * detail::kLn10;
  const Real a(0, p);
  const Real b(upper, p);
  const Real quad_tol = ctx.tol() / 1000;
  TanhSinh rule(p, 16);

  const long denom = detail::tail_denominator(plan.n_terms);
  const Real stop = ctx.tol() / 4;
  const long cap = plan.k_terms ? *plan.k_terms : plan.k_cap;
  RemainderResult res{Complex(p), Real(p), 0, false};
  Real estimate(p);
  for (long k = 1; k <= cap; ++k) {
    const Complex pole_sq = z_sq_4pi2 * (k * k);
    auto integrand = [&](const Real& w) { return Complex(pow(w, n) * exp(-w)) / (pole_sq + w * w); };
    Complex integral = rule.integrate(integrand, a, b, quad_tol).value;
    Complex term = prefactor * integral / pow(Real(k, p), n);
    res.value += term;
    estimate = abs(term) * k / denom;
    res.terms = k;
    if (!plan.k_terms && estimate < stop) break;
  }
  if (!plan.k_terms && estimate >= stop)
    throw ConvergenceError("remainder_quadrature: adaptive K reached the cap", (estimate * 2).to_double());
  res.tail_bound = estimate * 2;
  return res;
}

}  // namespace stokes
