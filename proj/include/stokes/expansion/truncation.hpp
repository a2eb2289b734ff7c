#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "stokes/core/errors.hpp"
#include "stokes/core/real.hpp"

namespace stokes {

/// N_o = ceil(pi |z|): the Stirling series is smallest near this index.
inline long optimal_truncation(const Real& modulus) {
  if (modulus.sign() <= 0) throw DomainError("optimal_truncation: modulus must be positive");
  Real x = modulus.at(std::max<Bits>(modulus.precision(), 256)) * pi(std::max<Bits>(modulus.precision(), 256));
  Real c(x.precision());
  mpfr_ceil(c.raw(), x.raw());
  return std::max(1L, mpfr_get_si(c.raw(), MPFR_RNDN));
}

inline long optimal_truncation(const mpq_class& modulus) { return optimal_truncation(Real(modulus, 256)); }

/// Truncation indices for the exact expansion: N terms of the Stirling
/// series (r = 1 .. N-1) and K terms of the remainder sum over k, or an
/// adaptive K when `k_terms` is empty.
struct TruncationPlan {
  long n_terms = 1;
  std::optional<long> k_terms;
  long n_optimal = 1;
  long k_cap = 1000000;

  TruncationPlan(long n, std::optional<long> k, long n_opt) : n_terms(n), k_terms(k), n_optimal(n_opt) {
    validate();
  }

  static TruncationPlan fixed(long n, long k, const mpq_class& modulus) {
    return TruncationPlan(n, k, optimal_truncation(modulus));
  }
  static TruncationPlan adaptive(long n, const mpq_class& modulus) {
    return TruncationPlan(n, std::nullopt, optimal_truncation(modulus));
  }
  /// N = N_o with adaptive K.
  static TruncationPlan optimal(const mpq_class& modulus) {
    long n_opt = optimal_truncation(modulus);
    return TruncationPlan(n_opt, std::nullopt, n_opt);
  }

  bool adaptive_k() const { return !k_terms.has_value(); }

  void validate() const {
    if (n_terms < 1) throw DomainError("TruncationPlan: N must be >= 1");
    if (k_terms && *k_terms < 1) throw DomainError("TruncationPlan: K must be >= 1");
    if (n_optimal < 1) throw DomainError("TruncationPlan: N_o must be >= 1");
    if (k_cap < 1) throw DomainError("TruncationPlan: K cap must be >= 1");
  }
};

}  // namespace stokes
