#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/core/real.hpp"

namespace stokes {

namespace detail {

/// zeta(s) for integer s >= 2 to `prec` bits.
///
/// Large s: the Dirichlet series is summed directly (it needs only a handful
/// of terms). Small s: Borwein's accelerated alternating series for eta(s),
/// whose error is below 3/(3+sqrt 8)^n.
inline Real zeta_integer(long s, Bits prec) {
  const Bits work = prec + 32;
  const double direct_terms = std::exp2(static_cast<double>(work) / static_cast<double>(s));
  if (direct_terms <= 64.0) {
    const long kmax = static_cast<long>(std::ceil(direct_terms)) + 1;
    Real sum(0, work);
    // smallest terms first
    for (long k = kmax; k >= 1; --k) sum += pow(Real(k, work), -s);
    return sum.at(prec);
  }

  const long n = static_cast<long>(std::ceil(static_cast<double>(work) * 0.3933)) + 4;
  // d_k = sum_{i<=k} u_i with u_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), all integers.
  std::vector<mpz_class> d(static_cast<size_t>(n) + 1);
  mpz_class u = 1;
  mpz_class acc = 1;
  d[0] = acc;
  for (long i = 1; i <= n; ++i) {
    u *= 4 * (n + i - 1) * (n - i + 1);
    mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>((2 * i) * (2 * i - 1)));
    acc += u;
    d[static_cast<size_t>(i)] = acc;
  }
  Real sum(0, work);
  Real dn(work);
  mpfr_set_z(dn.raw(), d[static_cast<size_t>(n)].get_mpz_t(), MPFR_RNDN);
  for (long k = 0; k < n; ++k) {
    Real dk(work);
    mpz_class diff = d[static_cast<size_t>(k)] - d[static_cast<size_t>(n)];
    mpfr_set_z(dk.raw(), diff.get_mpz_t(), MPFR_RNDN);
    Real term = dk * pow(Real(k + 1, work), -s);
    if (k % 2 == 0) sum += term; else sum -= term;
  }
  Real eta = -sum / dn;
  // zeta(s) = eta(s) / (1 - 2^{1-s})
  Real denom = 1 - ldexp(Real(1, work), 1 - s);
  return (eta / denom).at(prec);
}

}  // namespace detail

/// B_{2r} from B_{2r} = 2 (-1)^{r-1} (2r)! zeta(2r) / (2 pi)^{2r}.
/// Memoized per (r, working precision).
inline Real bernoulli_even(long r, const PrecisionContext& ctx) {
  if (r < 1) throw DomainError("bernoulli_even: r must be >= 1, got " + std::to_string(r));
  static std::shared_mutex mutex;
  static std::map<std::pair<long, Bits>, Real> memo;

  const Bits prec = ctx.working_bits();
  const auto key = std::make_pair(r, prec);
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  const Bits work = prec + 16;
  Real zeta = detail::zeta_integer(2 * r, work);
  Real value = factorial(static_cast<unsigned long>(2 * r), work) * zeta * 2 /
               pow(pi(work) * 2, 2 * r);
  if (r % 2 == 0) value = -value;
  value = value.at(prec);

  std::unique_lock lock(mutex);
  return memo.try_emplace(key, std::move(value)).first->second;
}

}  // namespace stokes
