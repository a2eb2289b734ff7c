#pragma once

// Tanh-sinh (double exponential) quadrature on a finite interval at arbitrary
// precision.
//
// With x = tanh(pi/2 sinh t) the trapezoidal rule in t converges
// exponentially for integrands analytic in a neighbourhood of (a, b), and it
// tolerates integrable endpoint singularities. Nodes are kept as distances
// from the nearer endpoint so that f is never evaluated on the endpoint
// itself, and each refinement level reuses all previous nodes.

#include <cmath>
#include <vector>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/real.hpp"

namespace stokes {

struct QuadratureResult {
  Complex value;
  Real error_estimate;
  int levels = 0;
  long evaluations = 0;
};

class TanhSinh {
 public:
  explicit TanhSinh(Bits prec, int max_level = 14) : prec_(prec), max_level_(max_level) {
    // Truncate the t-range where the weight drops below 2^-2(prec+20):
    // w ~ pi cosh t exp(-pi sinh t). The squared threshold keeps inverse
    // square-root endpoint singularities below 2^-prec as well.
    const double target = 2.0 * (static_cast<double>(prec) + 20.0) * 0.6931471805599453;
    double t = 1.0;
    while (M_PI * std::cosh(t) * std::exp(-M_PI * std::sinh(t)) > std::exp(-target)) t += 0.125;
    t_max_ = t;
  }

  Bits precision() const { return prec_; }

  /// Integrates f over [a, b]. `f` maps a Real abscissa to a Complex value.
  /// Refines until successive levels differ by at most
  /// tol * max(|I|, abs_floor); throws ConvergenceError otherwise.
  template <class F>
  QuadratureResult integrate(F&& f, const Real& a, const Real& b, const Real& tol,
                             const Real& abs_floor) {
    const Real half = (b - a).at(prec_) / 2;
    const Real mid = (a + b).at(prec_) / 2;
    QuadratureResult res{Complex(prec_), Real(prec_), 0, 0};

    Complex sum = f(mid) * level_center_weight();
    ++res.evaluations;
    Complex previous(prec_);
    Real last_diff(prec_);
    for (int level = 0; level <= max_level_; ++level) {
      const auto& nodes = level_nodes(level);
      for (const auto& n : nodes) {
        const Real offset = half * n.distance;
        Complex left = f(a + offset);
        Complex right = f(b - offset);
        res.evaluations += 2;
        sum += (left + right) * n.weight;
      }
      const Real h = ldexp(Real(1, prec_), -level);
      Complex estimate = sum * h * half;
      if (level > 0) {
        last_diff = abs(estimate - previous);
        Real scale = max(abs(estimate), abs_floor);
        if (level >= 3 && last_diff <= tol * scale) {
          res.value = estimate;
          res.error_estimate = last_diff;
          res.levels = level;
          return res;
        }
      }
      previous = std::move(estimate);
    }
    throw ConvergenceError("tanh-sinh quadrature did not converge", last_diff.to_double());
  }

  template <class F>
  QuadratureResult integrate(F&& f, const Real& a, const Real& b, const Real& tol) {
    return integrate(std::forward<F>(f), a, b, tol, Real(0, prec_));
  }

 private:
  struct Node {
    Real distance;  // 1 - |x| on [-1, 1]
    Real weight;
  };

  Real level_center_weight() const { return pi(prec_) / 2; }

  const std::vector<Node>& level_nodes(int level) {
    while (static_cast<int>(levels_.size()) <= level) {
      const int l = static_cast<int>(levels_.size());
      const Real h = ldexp(Real(1, prec_), -l);
      const Real half_pi = pi(prec_) / 2;
      std::vector<Node> nodes;
      // level 0: t = 1, 2, ...; level l: odd multiples of 2^-l
      const long step = (l == 0) ? 1 : 2;
      const long first = 1;
      for (long j = first;; j += step) {
        const double td = std::ldexp(static_cast<double>(j), -l);
        if (td > t_max_) break;
        const Real t = h * j;
        const Real u = half_pi * sinh(t);
        const Real e = exp(u);
        const Real cosh_u = (e + 1 / e) / 2;
        Node n{1 / (e * cosh_u), half_pi * cosh(t) / (cosh_u * cosh_u)};
        if (n.distance.is_zero()) break;
        nodes.push_back(std::move(n));
      }
      levels_.push_back(std::move(nodes));
    }
    return levels_[static_cast<size_t>(level)];
  }

  Bits prec_;
  int max_level_;
  double t_max_ = 0;
  std::vector<std::vector<Node>> levels_;
};

}  // namespace stokes
