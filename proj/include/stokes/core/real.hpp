#pragma once

// Value-semantic RAII wrapper around an MPFR floating-point number.
//
// Every Real carries its own precision; there is no global default. Binary
// operations produce a result at the larger of the operand precisions, and
// operations with machine integers keep the precision of the Real operand.

#include <gmp.h>
#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "stokes/core/errors.hpp"

namespace stokes {

using Bits = mpfr_prec_t;

/// Bits needed to carry `digits` significant decimal digits, plus a few spare.
inline Bits digits_to_bits(long digits) {
  return static_cast<Bits>(std::ceil(static_cast<double>(digits) * 3.321928094887362)) + 8;
}

inline long bits_to_digits(Bits bits) {
  return static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398120));
}

class Real {
 public:
  explicit Real(Bits prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(int value, Bits prec) : Real(static_cast<long>(value), prec) {}
  Real(double value, Bits prec) {
    if (!std::isfinite(value)) throw DomainError("Real: non-finite double");
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(const mpq_class& value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }

  /// Parses a decimal literal ("0.325", "-1e-5", "12").
  static Real parse(std::string_view text, Bits prec) {
    Real r(prec);
    std::string s(text);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 || !r.is_finite())
      throw DomainError("Real: cannot parse '" + s + "'");
    return r;
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  Bits precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  /// Copy rounded (or zero-extended) to another precision.
  Real at(Bits prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Natural log of |x| as a double; usable far outside double range. -inf for 0.
  double log_abs() const {
    if (is_zero()) return -HUGE_VAL;
    long exp2 = 0;
    double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * 0.69314718055994531;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o) { return assign_binary(o, mpfr_add); }
  Real& operator-=(const Real& o) { return assign_binary(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return assign_binary(o, mpfr_mul); }
  Real& operator/=(const Real& o) {
    if (o.is_zero()) throw DomainError("Real: division by zero");
    return assign_binary(o, mpfr_div);
  }
  Real& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(long o) {
    if (o == 0) throw DomainError("Real: division by zero");
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }

  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator+(long a, Real b) { return b += a; }
  friend Real operator*(long a, Real b) { return b *= a; }
  friend Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    if (b.is_zero()) throw DomainError("Real: division by zero");
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  // Mixed arithmetic with doubles would silently truncate through `long`.
  template <std::floating_point F> friend Real operator+(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator-(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator*(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator/(const Real&, F) = delete;
  template <std::floating_point F> friend Real operator*(F, const Real&) = delete;
  template <std::floating_point F> friend bool operator==(const Real&, F) = delete;
  template <std::floating_point F> friend std::partial_ordering operator<=>(const Real&, F) = delete;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  Real& assign_binary(const Real& o, BinaryFn fn) {
    Bits p = std::max(precision(), o.precision());
    if (p != precision()) mpfr_prec_round(v_, p, MPFR_RNDN);
    fn(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }
inline Real sqrt(const Real& x) {
  if (x.sign() < 0) throw DomainError("sqrt: negative real argument");
  return detail::unary(x, mpfr_sqrt);
}
inline Real exp(const Real& x) { return detail::unary(x, mpfr_exp); }
inline Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log: non-positive real argument");
  return detail::unary(x, mpfr_log);
}
inline Real sin(const Real& x) { return detail::unary(x, mpfr_sin); }
inline Real cos(const Real& x) { return detail::unary(x, mpfr_cos); }
inline Real sinh(const Real& x) { return detail::unary(x, mpfr_sinh); }
inline Real cosh(const Real& x) { return detail::unary(x, mpfr_cosh); }
inline Real erf(const Real& x) { return detail::unary(x, mpfr_erf); }

inline void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real(x.precision());
  c = Real(x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline Real hypot(const Real& x, const Real& y) {
  Real r(std::max(y.precision(), x.precision()));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, long n) {
  if (n < 0 && x.is_zero()) throw DomainError("pow: zero to a negative power");
  Real r(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, const Real& y) {
  if (x.sign() < 0) throw DomainError("pow: negative base with real exponent");
  Real r(std::max(y.precision(), x.precision()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

inline Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

inline Real pi(Bits prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

inline Real factorial(unsigned long n, Bits prec) {
  Real r(prec);
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

/// 10^e at the given precision.
inline Real pow10(long e, Bits prec) {
  Real r(prec);
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}

}  // namespace stokes
