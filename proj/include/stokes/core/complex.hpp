#pragma once

// Arbitrary-precision complex numbers and the principal-branch elementary
// functions (exp, log, sqrt, integer powers, arctan) built on Real.
//
// Branch convention: arg x lies in (-pi, pi]. A point on the negative real
// axis (imaginary part zero, of either sign) has arg = +pi, i.e. it is taken
// on the upper side of the cut.

#include <algorithm>
#include <string>

#include "stokes/core/errors.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/core/real.hpp"

namespace stokes {

class Complex {
 public:
  explicit Complex(Bits prec = 64) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(re_.precision()) {}
  Complex(long re, long im, Bits prec) : re_(re, prec), im_(im, prec) {}

  /// The imaginary unit.
  static Complex i(Bits prec) { return Complex(0, 1, prec); }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }

  Bits precision() const { return std::max(re_.precision(), im_.precision()); }
  Complex at(Bits prec) const { return Complex(re_.at(prec), im_.at(prec)); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  /// On the closed negative real axis (the branch cut of log, sqrt, E1, ...).
  bool on_negative_axis() const { return im_.is_zero() && re_.sign() < 0; }

  Complex conj() const { return Complex(re_, -im_); }
  /// Multiplication by i.
  Complex times_i() const { return Complex(-im_, re_); }

  Complex& operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Complex& operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    if (o.is_zero()) throw DomainError("Complex: division by zero");
    Real den = o.re_ * o.re_ + o.im_ * o.im_;
    Real r = (re_ * o.re_ + im_ * o.im_) / den;
    im_ = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    return *this;
  }
  Complex& operator+=(const Real& o) { re_ += o; return *this; }
  Complex& operator-=(const Real& o) { re_ -= o; return *this; }
  Complex& operator*=(const Real& o) { re_ *= o; im_ *= o; return *this; }
  Complex& operator/=(const Real& o) { re_ /= o; im_ /= o; return *this; }
  Complex& operator+=(long o) { re_ += o; return *this; }
  Complex& operator-=(long o) { re_ -= o; return *this; }
  Complex& operator*=(long o) { re_ *= o; im_ *= o; return *this; }
  Complex& operator/=(long o) { re_ /= o; im_ /= o; return *this; }

  Complex operator-() const { return Complex(-re_, -im_); }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator+(Complex a, const Real& b) { return a += b; }
  friend Complex operator-(Complex a, const Real& b) { return a -= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
  friend Complex operator*(const Real& a, Complex b) { return b *= a; }
  friend Complex operator+(const Real& a, Complex b) { return b += a; }
  friend Complex operator-(const Real& a, const Complex& b) { return Complex(a - b.re_, -b.im_); }
  friend Complex operator/(const Real& a, const Complex& b) { return Complex(a) / b; }
  friend Complex operator+(Complex a, long b) { return a += b; }
  friend Complex operator-(Complex a, long b) { return a -= b; }
  friend Complex operator*(Complex a, long b) { return a *= b; }
  friend Complex operator/(Complex a, long b) { return a /= b; }
  friend Complex operator*(long a, Complex b) { return b *= a; }
  friend Complex operator-(long a, const Complex& b) { return Complex(a - b.re_, -b.im_); }
  friend Complex operator+(long a, Complex b) { return b += a; }
  friend Complex operator/(long a, const Complex& b) {
    return Complex(Real(a, b.precision())) / b;
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

inline Real abs(const Complex& z) { return hypot(z.re(), z.im()); }
/// |z|^2
inline Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

/// Principal argument in (-pi, pi]; the negative real axis maps to +pi.
inline Real arg(const Complex& z) {
  if (z.is_zero()) throw DomainError("arg: zero argument");
  if (z.im().is_zero()) {
    return z.re().sign() > 0 ? Real(z.precision()) : pi(z.precision());
  }
  return atan2(z.im(), z.re());
}

inline Complex polar(const Real& modulus, const Real& angle) {
  Real s, c;
  sin_cos(angle, s, c);
  return Complex(modulus * c, modulus * s);
}

/// e^{i t} for real t.
inline Complex expi(const Real& t) { return polar(Real(1, t.precision()), t); }

inline Complex exp(const Complex& z) {
  Real m = exp(z.re());
  if (z.im().is_zero()) return Complex(m, Real(z.precision()));
  Real s, c;
  sin_cos(z.im(), s, c);
  return Complex(m * c, m * s);
}

inline Complex log(const Complex& z) {
  if (z.is_zero()) throw DomainError("log: zero argument");
  return Complex(log(abs(z)), arg(z));
}

/// Principal square root (Re >= 0; on the negative axis the result is +i*sqrt|z|).
inline Complex sqrt(const Complex& z) {
  if (z.is_zero()) throw DomainError("sqrt: zero argument");
  Real m = abs(z);
  Real t = sqrt((m + abs(z.re())) / 2);
  // t > 0 because z != 0.
  if (z.re().sign() >= 0) return Complex(t, z.im() / (2 * t));
  Real u = z.im().sign() < 0 ? -t : t;
  return Complex(abs(z.im()) / (2 * t), u);
}

/// Integer power by repeated squaring (exact branch-free for any integer n).
inline Complex pow(const Complex& z, long n) {
  if (n == 0) return Complex(1, 0, z.precision());
  if (n < 0) return 1 / pow(z, -n);
  Complex result(1, 0, z.precision());
  Complex base = z;
  unsigned long e = static_cast<unsigned long>(n);
  while (true) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e == 0) break;
    base *= base;
  }
  return result;
}

/// Principal arctangent: atan w = (1/(2i)) log((1 + i w)/(1 - i w)).
/// Singular at w = +-i.
inline Complex atan(const Complex& w) {
  Complex iw = w.times_i();
  Complex num = 1 + iw;
  Complex den = 1 - iw;
  if (num.is_zero() || den.is_zero()) throw DomainError("atan: argument at +-i");
  // log(1+iw) - log(1-iw) keeps the principal branch for real-axis-crossing cuts.
  Complex l = log(num) - log(den);
  // divide by 2i: (a+bi)/(2i) = (b - a i)/2
  return Complex(l.im() / 2, -l.re() / 2);
}

inline void require_finite(const Complex& z, const char* what) {
  if (!z.is_finite()) throw PrecisionError(std::string(what) + ": non-finite result", 0);
}

/// Mixed absolute/relative comparison on the complex modulus.
inline bool approx_equal(const Complex& a, const Complex& b, const Real& tol) {
  Real scale = max(Real(1, tol.precision()), max(abs(a), abs(b)));
  return abs(a - b) <= tol * scale;
}

inline bool approx_equal(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  return approx_equal(a, b, ctx.tol());
}

}  // namespace stokes
