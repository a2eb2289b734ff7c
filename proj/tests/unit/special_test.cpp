#include <gtest/gtest.h>

#include <vector>

#include "stokes/core/erf.hpp"
#include "stokes/core/tanh_sinh.hpp"
#include "stokes/special/exp_integral.hpp"
#include "stokes/special/incomplete_gamma.hpp"
#include "stokes/special/terminant.hpp"

namespace stokes {
namespace {

bool agree_digits(const Complex& a, const Complex& b, long digits) {
  return approx_equal(a, b, pow10(-digits, std::max(a.precision(), b.precision())));
}

Complex from_polar(double modulus, const Real& angle, Bits p) { return polar(Real(modulus, p), angle); }

TEST(ExpIntegralTest, E1AtOneMatchesQuadrature) {
  PrecisionContext ctx(60);
  const Bits p = ctx.working_bits();
  TanhSinh rule(p);
  auto f = [&](const Real& t) { return Complex(exp(-t) / t); };
  Complex oracle = rule.integrate(f, Real(1, p), Real(160, p), pow10(-58, p)).value;
  Complex e1 = exp_integral_e1(Complex(1, 0, p), ctx);
  EXPECT_TRUE(agree_digits(e1, oracle, 55));
  EXPECT_NEAR(e1.re().to_double(), 0.2193839344, 1e-10);
  EXPECT_TRUE(e1.im().is_zero() || abs(e1.im()) < ctx.tol());
}

TEST(ExpIntegralTest, GammaZeroIsE1) {
  PrecisionContext ctx(50);
  Complex x(2, 3, ctx.working_bits());
  EXPECT_EQ(upper_incomplete_gamma(IncGammaRequest(0, x), ctx), exp_integral_e1(x, ctx));
}

TEST(ExpIntegralTest, SchwarzReflection) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  Complex x = from_polar(5.0, pi(p) / 4, p);
  EXPECT_TRUE(approx_equal(exp_integral_e1(x.conj(), ctx), exp_integral_e1(x, ctx).conj(), ctx));
}

TEST(ExpIntegralTest, SeriesAndContinuedFractionAgreeOnOverlap) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  for (double mod : {20.0, 35.0, 60.0}) {
    for (double frac : {0.0, 0.3, -0.5, 0.75, -0.9, 0.9}) {
      Complex x = from_polar(mod, pi(p) * Real(frac, p), p);
      Complex series = e1_scaled_series(x, ctx);
      // close to the cut the fraction needs more than the default iteration cap
      Complex cf = e1_scaled_continued_fraction(x, ctx, 50000);
      EXPECT_TRUE(approx_equal(series, cf, ctx)) << "mod=" << mod << " arg/pi=" << frac;
    }
  }
}

TEST(ExpIntegralTest, OnCutEqualsUpperSideLimit) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  for (long r : {3L, 40L, 150L}) {
    Complex on_cut(Real(-r, p), Real(p));
    Complex above(Real(-r, p), pow10(-60, p));
    EXPECT_TRUE(agree_digits(exp_integral_e1_scaled(on_cut, ctx), exp_integral_e1_scaled(above, ctx), 45));
    Complex v = exp_integral_e1(on_cut, ctx);
    // Im E1(-r + i0) = -pi
    EXPECT_TRUE(approx_equal(v.im(), -pi(p), ctx)) << r;
  }
}

TEST(ExpIntegralTest, ErrorsOnZeroAndGuardCap) {
  PrecisionContext ctx(30);
  EXPECT_THROW(exp_integral_e1(Complex(ctx.working_bits()), ctx), DomainError);
  // the series at |x| = 200 near the positive axis needs ~170 guard digits
  PrecisionContext capped = ctx.with_max_extra_guard(50);
  Complex x(200, 1, ctx.working_bits());
  try {
    e1_scaled_series(x, capped);
    FAIL() << "expected PrecisionError";
  } catch (const PrecisionError& e) {
    EXPECT_GT(e.required_guard_digits(), 150);
  }
}

TEST(IncompleteGammaTest, OneRecurrenceStep) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  Complex one(1, 0, p);
  Complex g = upper_incomplete_gamma(IncGammaRequest(1, one), ctx);
  // Gamma(-1, 1) = e^{-1} - E1(1)
  Complex expected = Complex(exp(Real(-1, p))) - exp_integral_e1(one, ctx);
  EXPECT_TRUE(approx_equal(g, expected, ctx));
  EXPECT_NEAR(g.re().to_double(), 0.1484955068, 1e-9);
  EXPECT_TRUE(agree_digits(g, incgamma_oracle_quadrature(IncGammaRequest(1, one), ctx), 33));
}

TEST(IncompleteGammaTest, OracleBasics) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  Complex one(1, 0, p);
  EXPECT_TRUE(agree_digits(incgamma_oracle_quadrature(IncGammaRequest(0, one), ctx),
                           exp_integral_e1(one, ctx), 33));
  Complex two_i(0, 2, p);
  EXPECT_TRUE(agree_digits(incgamma_oracle_quadrature(IncGammaRequest(2, two_i), ctx),
                           upper_incomplete_gamma(IncGammaRequest(2, two_i), ctx), 30));
  EXPECT_THROW(incgamma_oracle_quadrature(IncGammaRequest(2, Complex(-3, 0, p)), ctx), DomainError);
  EXPECT_THROW(IncGammaRequest(-1, one), DomainError);
  EXPECT_THROW(IncGammaRequest(1, Complex(p)), DomainError);
}

TEST(IncompleteGammaTest, LargeOrderAtRemainderArgument) {
  // the k = 1 argument 2 pi i z at |z| = 5, theta = pi/3, N = 12
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  Complex x = polar(pi(p) * 10, pi(p) * 5 / 6);
  IncGammaRequest req(22, x);
  EXPECT_TRUE(agree_digits(upper_incomplete_gamma(req, ctx), incgamma_oracle_quadrature(req, ctx), 30));
}

TEST(IncompleteGammaTest, Reflection) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  for (long n : {0L, 3L, 22L}) {
    Complex x = from_polar(17.0, pi(p) * 7 / 10, p);
    EXPECT_TRUE(approx_equal(upper_incomplete_gamma(IncGammaRequest(n, x.conj()), ctx),
                             upper_incomplete_gamma(IncGammaRequest(n, x), ctx).conj(), ctx));
  }
}

TEST(IncompleteGammaTest, LeadingAsymptoticBehaviour) {
  PrecisionContext ctx(40);
  const Bits p = ctx.working_bits();
  for (long n : {0L, 2L, 10L}) {
    for (double mod : {50.0, 100.0, 200.0}) {
      for (double frac : {0.0, 0.25, -0.5, 0.8, -0.9}) {
        Complex x = from_polar(mod, pi(p) * Real(frac, p), p);
        Complex scaled = upper_incomplete_gamma_scaled(IncGammaRequest(n, x), ctx);
        double ratio = abs(scaled * pow(x, n + 1)).to_double();
        EXPECT_GE(ratio, 0.5) << n << " " << mod << " " << frac;
        EXPECT_LE(ratio, 2.0) << n << " " << mod << " " << frac;
      }
    }
  }
}

TEST(IncompleteGammaTest, ContinuationAcrossTheCut) {
  // Crossing the negative axis from above continues the principal branch;
  // the value below the cut differs by -2 pi i (-1)^n / n!.
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  for (long n : {0L, 1L, 6L, 22L}) {
    Real delta = pow10(-45, p);
    Complex above(Real(-12, p), delta);
    Complex below(Real(-12, p), -delta);
    Complex jump = upper_incomplete_gamma(IncGammaRequest(n, above), ctx) -
                   upper_incomplete_gamma(IncGammaRequest(n, below), ctx);
    EXPECT_TRUE(agree_digits(jump, incgamma_continuation_jump(n, p), 40)) << n;
  }
}

TEST(IncompleteGammaTest, PairMatchesSingleEvaluations) {
  PrecisionContext ctx(50);
  const Bits p = ctx.working_bits();
  for (double mod : {0.5, 8.0, 31.4, 90.0}) {
    for (double frac : {0.0, 0.3, 0.5, 0.75, -0.4}) {
      Complex x = from_polar(mod, pi(p) * Real(frac, p), p);
      auto [plus, minus] = upper_incomplete_gamma_scaled_pair(30, x, ctx);
      EXPECT_TRUE(approx_equal(plus, upper_incomplete_gamma_scaled(IncGammaRequest(30, x), ctx), ctx))
          << mod << " " << frac;
      EXPECT_TRUE(approx_equal(minus, upper_incomplete_gamma_scaled(IncGammaRequest(30, -x), ctx), ctx))
          << mod << " " << frac;
    }
  }
}

TEST(ExpIntegralTest, ContinuedFractionReportsExhaustion) {
  PrecisionContext ctx(50);
  Complex x(-30, 1, ctx.working_bits());
  try {
    e1_scaled_continued_fraction(x, ctx, 20);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.achieved_estimate(), 0.0);
  }
}

TEST(TerminantTest, PrefactorIsMinusGammaOverTwoPiI) {
  PrecisionContext ctx(40);
  const Bits p = ctx.working_bits();
  for (long nu : {1L, 3L, 31L, 51L}) {
    Complex expected = -Complex(factorial(static_cast<unsigned long>(nu - 1), p)) / (Complex::i(p) * (pi(p) * 2));
    EXPECT_TRUE(approx_equal(terminant_prefactor(nu, p), expected, ctx));
  }
  EXPECT_THROW(TerminantRequest(4, Complex(1, 0, p)), DomainError);
  EXPECT_THROW(TerminantRequest(-1, Complex(1, 0, p)), DomainError);
}

TEST(TerminantTest, ScaledAndUnscaledAgree) {
  PrecisionContext ctx(40);
  const Bits p = ctx.working_bits();
  Complex x(Real(p), pi(p) * 16);
  TerminantRequest req(51, x);
  EXPECT_TRUE(approx_equal(terminant_scaled(req, ctx), exp(x) * terminant(req, ctx), ctx));
}

TEST(ErfCrossCheck, MaclaurinAgreesWithIncompleteGammaRoute) {
  // erf x = 1 - Gamma(1/2, x^2)/sqrt(pi) for Re x > 0; odd symmetry covers Re x < 0.
  PrecisionContext ctx(40);
  const Bits p = ctx.working_bits();
  int count = 0;
  for (double mod : {0.5, 1.5, 3.0, 4.5, 6.0}) {
    for (double frac : {-0.2, -0.05, 0.1, 0.24}) {
      Complex x = from_polar(mod, pi(p) * Real(frac, p), p);
      Complex gamma_half = incgamma_half_oracle_quadrature(x * x, ctx);
      Complex via_gamma = 1 - gamma_half / sqrt(pi(p));
      Complex series = erf_complex(x, ctx);
      EXPECT_TRUE(agree_digits(series, via_gamma, 30)) << mod << " " << frac;
      EXPECT_TRUE(agree_digits(erf_complex(-x, ctx), -via_gamma, 30));
      ++count;
    }
  }
  EXPECT_EQ(count, 20);
}

}  // namespace
}  // namespace stokes
