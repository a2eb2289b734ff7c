#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/real.hpp"

namespace stokes {

/// Parses "5", "0.325", "-1.5e-3" or "1/3" into an exact rational.
inline mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> mpq_class { throw DomainError("cannot parse number '" + s + "'"); };
  if (s.empty()) return fail();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class num = parse_rational(s.substr(0, slash));
    mpq_class den = parse_rational(s.substr(slash + 1));
    if (den == 0) return fail();
    mpq_class q = num / den;
    q.canonicalize();
    return q;
  }
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      size_t used = 0;
      exp10 = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) return fail();
    } catch (const std::logic_error&) {
      return fail();
    }
  }
  bool negative = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    negative = mant[0] == '-';
    mant.erase(0, 1);
  }
  std::string digits;
  long frac = 0;
  bool seen_point = false;
  for (char c : mant) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  mpz_class num(digits, 10);
  mpz_class ten = 10;
  long shift = exp10 - frac;
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

/// Which branch of the exact expansion applies: lower is 0 <= theta <= pi/2
/// (the Stokes line itself included), upper is pi/2 < theta < pi.
enum class Sector { lower, upper };

/// A point z = modulus * exp(i pi t) with 0 <= t < 1, stored exactly so that
/// Stokes-line inputs (t = 1/2) and the real axis (t = 0) are hit exactly at
/// every precision.
class EvalPoint {
 public:
  EvalPoint(mpq_class modulus, mpq_class theta_over_pi)
      : modulus_(std::move(modulus)), theta_over_pi_(std::move(theta_over_pi)) {
    modulus_.canonicalize();
    theta_over_pi_.canonicalize();
    if (modulus_ <= 0) throw DomainError("EvalPoint: modulus must be positive");
    if (theta_over_pi_ < 0 || theta_over_pi_ >= 1)
      throw DomainError("EvalPoint: theta/pi must lie in [0, 1)");
  }

  static EvalPoint parse(std::string_view modulus, std::string_view theta_over_pi) {
    return EvalPoint(parse_rational(modulus), parse_rational(theta_over_pi));
  }

  const mpq_class& modulus_exact() const { return modulus_; }
  const mpq_class& theta_over_pi_exact() const { return theta_over_pi_; }

  Real modulus(Bits prec) const { return Real(modulus_, prec); }
  Real theta_over_pi(Bits prec) const { return Real(theta_over_pi_, prec); }
  Real theta(Bits prec) const { return theta_over_pi(prec) * pi(prec); }

  Sector sector() const { return theta_over_pi_ > mpq_class(1, 2) ? Sector::upper : Sector::lower; }
  bool on_stokes_line() const { return theta_over_pi_ == mpq_class(1, 2); }

  /// z in rectangular form, with exact zero components on the axes.
  Complex z(Bits prec) const {
    Real r = modulus(prec);
    if (theta_over_pi_ == 0) return Complex(r, Real(prec));
    if (on_stokes_line()) return Complex(Real(prec), r);
    return polar(r, theta(prec));
  }

  /// The mirror point |z| e^{i(pi - theta)}; for 0 < theta < pi its conjugate
  /// is z e^{-i pi} = -z.
  EvalPoint mirrored() const {
    if (theta_over_pi_ == 0) throw DomainError("EvalPoint::mirrored: theta must be positive");
    return EvalPoint(modulus_, 1 - theta_over_pi_);
  }

  double modulus_double() const { return modulus_.get_d(); }
  double theta_over_pi_double() const { return theta_over_pi_.get_d(); }

 private:
  mpq_class modulus_;
  mpq_class theta_over_pi_;
};

}  // namespace stokes
