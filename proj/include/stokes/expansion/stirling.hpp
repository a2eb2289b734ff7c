#pragma once

#include <cmath>

#include "stokes/core/bernoulli.hpp"
#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"

namespace stokes {

/// sum_{r=1}^{N-1} B_{2r} / (2r (2r-1) z^{2r-1}); the empty sum for N = 1.
inline Complex stirling_partial_sum(const Complex& z, long n_terms, const PrecisionContext& ctx) {
  if (z.is_zero()) throw DomainError("stirling_partial_sum: z must be nonzero");
  if (n_terms < 1) throw DomainError("stirling_partial_sum: N must be >= 1");
  const Bits p = ctx.working_bits();
  Complex sum(p);
  if (n_terms == 1) return sum;
  const Complex inv = 1 / z.at(p);
  const Complex inv_sq = inv * inv;
  Complex power = inv;  // z^{-(2r-1)}
  for (long r = 1; r < n_terms; ++r) {
    if (r > 1) power *= inv_sq;
    sum += power * bernoulli_even(r, ctx) / ((2 * r) * (2 * r - 1));
  }
  return sum;
}

/// log10 of the largest |term| in the partial sum (double estimate), used to
/// size extra guard digits when |z| is small and the terms grow.
inline double stirling_largest_term_log10(double modulus, long n_terms) {
  double best = -HUGE_VAL;
  for (long r = 1; r < n_terms; ++r) {
    // |B_{2r}| ~ 2 (2r)! / (2 pi)^{2r}
    const double lb = std::log(2.0) + std::lgamma(2.0 * r + 1.0) - 2.0 * r * std::log(2.0 * M_PI);
    const double lt = lb - std::log(2.0 * r * (2.0 * r - 1.0)) - (2.0 * r - 1.0) * std::log(modulus);
    best = std::max(best, lt / std::log(10.0));
  }
  return best;
}

}  // namespace stokes
