#pragma once

#include <cmath>
#include <sstream>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"

namespace stokes {

/// Largest |x| accepted by erf_complex unless the caller raises it.
inline constexpr double kErfDefaultMagnitudeCap = 8.0;

/// erf(x) for complex x by its Maclaurin series
///   erf x = 2/sqrt(pi) * sum_k (-1)^k x^{2k+1} / (k! (2k+1)).
/// The partial sums pass through terms of size ~e^{|x|^2}, so the series runs
/// with 0.4343 |x|^2 extra digits; |x| is capped to keep that bounded.
inline Complex erf_complex(const Complex& x, const PrecisionContext& ctx,
                           double magnitude_cap = kErfDefaultMagnitudeCap) {
  const double mod = abs(x).to_double();
  if (mod > magnitude_cap) {
    std::ostringstream msg;
    msg << "erf_complex: |x| = " << mod << " exceeds the series cap " << magnitude_cap;
    throw DomainError(msg.str());
  }
  const Bits out = ctx.working_bits();
  if (x.is_zero()) return Complex(out);

  const long extra = static_cast<long>(std::ceil(0.4343 * mod * mod)) + 5;
  const Bits work = digits_to_bits(ctx.digits() + ctx.guard() + extra);

  const Complex xw = x.at(work);
  const Complex minus_x2 = -(xw * xw);
  Complex term = xw;  // (-x^2)^k x / k!
  Complex sum = xw;
  const Real eps = ldexp(Real(1, work), -static_cast<long>(work));
  for (long k = 1;; ++k) {
    term *= minus_x2;
    term /= k;
    Complex contrib = term / (2 * k + 1);
    sum += contrib;
    if (static_cast<double>(k) > mod * mod && abs(contrib) <= eps * abs(sum)) break;
    if (k > 100000) throw ConvergenceError("erf_complex: series did not terminate", 0.0);
  }
  sum *= 2;
  sum /= sqrt(pi(work));
  return sum.at(out);
}

}  // namespace stokes
