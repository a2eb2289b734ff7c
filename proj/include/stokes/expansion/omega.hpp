#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "stokes/core/complex.hpp"
#include "stokes/core/constants.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/expansion/remainder.hpp"
#include "stokes/expansion/stirling.hpp"
#include "stokes/expansion/truncation.hpp"

namespace stokes {

/// Omega(z) = log Gamma(z) - (z - 1/2) log z + z - log(2 pi)/2 and its parts.
struct OmegaResult {
  Complex value;
  Complex series_part;
  Complex remainder_part;
  /// -log(1 - e^{2 pi i z}) above the Stokes line, zero below.
  Complex continuation_term;
  Real tail_bound;
  long k_terms = 0;
  std::vector<std::string> warnings;
};

namespace detail {

/// Extra digits for the Stirling sum when its terms grow past 1 (small |z|).
inline long stirling_extra_digits(double modulus, long n_terms) {
  const double top = stirling_largest_term_log10(modulus, n_terms);
  return top > 0 ? static_cast<long>(std::ceil(top)) + 2 : 0;
}

}  // namespace detail

/// -log(1 - e^{2 pi i z}); PrecisionError when 1 - e^{2 pi i z} is below 10^{-P}.
inline Complex continuation_term(const Complex& z, const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  Complex e = exp((z.at(p) * (pi(p) * 2)).times_i());
  Complex d = 1 - e;
  if (abs(d) < pow10(-ctx.digits(), p))
    throw PrecisionError("omega: 1 - exp(2 pi i z) vanishes to working precision", ctx.digits());
  return -log(d);
}

/// Omega at a rectangular point. `upper` selects the continued form above the
/// Stokes line (principal-branch remainder plus the continuation term).
inline OmegaResult omega_at(const Complex& z, bool upper, long n_terms, std::optional<long> k_terms,
                            const PrecisionContext& ctx, long k_cap = 1000000) {
  const double modulus = abs(z).to_double();
  const PrecisionContext inner = ctx.with_extra_guard(detail::stirling_extra_digits(modulus, n_terms));
  const Bits p = ctx.working_bits();

  OmegaResult res{Complex(p), Complex(p), Complex(p), Complex(p), Real(p), 0, {}};
  if (modulus < 1.0) {
    std::ostringstream msg;
    msg << "small |z| = " << modulus << ": no useful optimal truncation";
    if (n_terms > 1) msg << "; the N = " << n_terms << " Bernoulli terms cancel against the remainder";
    res.warnings.push_back(msg.str());
  }
  if (upper) res.continuation_term = continuation_term(z, inner).at(p);
  RemainderResult rem = remainder_series_at(z, n_terms, k_terms, inner, k_cap);
  res.series_part = stirling_partial_sum(z, n_terms, inner).at(p);
  res.remainder_part = rem.value.at(p);
  res.value = res.series_part + res.remainder_part + res.continuation_term;
  res.tail_bound = rem.tail_bound.at(p);
  res.k_terms = rem.terms;
  return res;
}

inline OmegaResult omega(const EvalPoint& point, const TruncationPlan& plan, const PrecisionContext& ctx) {
  plan.validate();
  return omega_at(point.z(ctx.working_bits()), point.sector() == Sector::upper, plan.n_terms, plan.k_terms,
                  ctx, plan.k_cap);
}

/// (z - 1/2) log z - z + log(2 pi)/2 with the principal log.
inline Complex log_gamma_elementary(const Complex& z, const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  const Complex zw = z.at(p);
  Complex half(Real(1, p) / 2, Real(p));
  return (zw - half) * log(zw) - zw + log_two_pi(p) / 2;
}

/// log Gamma(z) = Omega(z) + elementary part, continuous in theta on [0, pi).
inline Complex log_gamma(const EvalPoint& point, const TruncationPlan& plan, const PrecisionContext& ctx) {
  OmegaResult om = omega(point, plan, ctx);
  return om.value + log_gamma_elementary(point.z(ctx.working_bits()), ctx);
}

}  // namespace stokes
