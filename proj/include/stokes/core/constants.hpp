#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>

#include "stokes/core/real.hpp"

namespace stokes {

namespace detail {

/// Per-precision memo with idempotent writes; readers never block each other.
class PrecisionMemo {
 public:
  template <class Compute>
  Real get(Bits prec, Compute compute) {
    {
      std::shared_lock lock(mutex_);
      auto it = values_.find(prec);
      if (it != values_.end()) return it->second;
    }
    Real value = compute(prec);
    std::unique_lock lock(mutex_);
    return values_.try_emplace(prec, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Bits, Real> values_;
};

}  // namespace detail

/// Euler-Mascheroni constant gamma_E, memoized per precision (MPFR's
/// Brent-McMillan implementation does the work).
inline Real euler_gamma(Bits prec) {
  static detail::PrecisionMemo memo;
  return memo.get(prec, [](Bits p) {
    Real r(p);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
  });
}

/// log(2 pi)
inline Real log_two_pi(Bits prec) {
  static detail::PrecisionMemo memo;
  return memo.get(prec, [](Bits p) { return log(pi(p) * 2); });
}

}  // namespace stokes
