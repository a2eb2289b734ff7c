// Acceptance checks, one PASS/FAIL line per criterion.
//   acceptance            run all ten
//   acceptance 3 7        run a subset
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stokes/cli/output.hpp"
#include "stokes/expansion/omega.hpp"
#include "stokes/expansion/reference.hpp"
#include "stokes/expansion/remainder.hpp"
#include "stokes/expansion/truncation.hpp"
#include "stokes/multiplier/approx.hpp"
#include "stokes/multiplier/sweep.hpp"
#include "stokes/special/incomplete_gamma.hpp"

using namespace stokes;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string why) {
    pass = false;
    notes.push_back(std::move(why));
  }
  void note(std::string what) { notes.push_back(std::move(what)); }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Published multiplier table at |z| = 8: theta/pi, exact, approximation.
struct MultiplierRow {
  const char* theta;
  const char* exact_re;
  const char* exact_im;
  const char* approx_re;
  const char* approx_im;
};

const std::vector<MultiplierRow>& published_multipliers() {
  static const std::vector<MultiplierRow> rows = {
      {"0.325", "0.0000224", "0.0000580", "0.0000223", "0.0000580"},
      {"0.350", "0.0003638", "0.0003179", "0.0003641", "0.0003176"},
      {"0.400", "0.0133877", "0.0019356", "0.0133896", "0.0019274"},
      {"0.450", "0.1338254", "-0.0067919", "0.1338262", "-0.0068425"},
      {"0.475", "0.2894310", "-0.0182669", "0.2894307", "-0.0183467"},
      {"0.500", "0.5000000", "-0.0242241", "0.5000000", "-0.0243169"},
      {"0.525", "0.7105689", "-0.0182669", "0.7105693", "-0.0183467"},
      {"0.550", "0.8661746", "-0.0067919", "0.8661738", "-0.0068425"},
      {"0.600", "0.9866123", "0.0019356", "0.9866104", "0.0019274"},
      {"0.650", "0.9996362", "0.0003179", "0.9996359", "0.0003176"},
      {"0.700", "1.0000017", "0.0000060", "1.0000000", "0.0000060"},
      {"0.750", "1.0000000", "0.0000000", "1.0000000", "0.0000000"},
  };
  return rows;
}

const std::vector<StokesSample>& multiplier_samples() {
  static const std::vector<StokesSample> samples = [] {
    std::vector<mpq_class> grid;
    for (const auto& r : published_multipliers()) grid.push_back(parse_rational(r.theta));
    return stokes_sweep(mpq_class(8), grid, PrecisionContext(70));
  }();
  return samples;
}

// 5e-8 per component and an identical 7dp rendering.
void compare_component(Outcome& out, const char* theta, const char* what, const Real& got, const char* want) {
  const std::string shown = cli::format_fixed(got, 7);
  const double gap = std::fabs(got.to_double() - std::stod(want));
  if (gap > 5e-8 || shown != want)
    out.fail(std::string(theta) + " " + what + ": " + shown + " vs " + want + " (gap " + sci(gap) + ")");
}

Outcome multiplier_column(bool exact) {
  Outcome out;
  const auto& samples = multiplier_samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& r = published_multipliers()[i];
    const auto& s = samples[i];
    if (!s.ok()) {
      out.fail(std::string(r.theta) + ": " + s.error);
      continue;
    }
    const Complex& v = exact ? s.s_exact : s.s_approx;
    compare_component(out, r.theta, "Re", v.re(), exact ? r.exact_re : r.approx_re);
    compare_component(out, r.theta, "Im", v.im(), exact ? r.exact_im : r.approx_im);
  }
  if (out.pass) out.note("12 rows within 5e-8, 7dp identical");
  return out;
}

Outcome criterion1() { return multiplier_column(true); }

Outcome criterion2() {
  Outcome out = multiplier_column(false);
  const auto& mid = multiplier_samples()[5];
  if (mid.ok()) out.note("0.5 row " + cli::format_complex_fixed(mid.s_approx, 7));
  return out;
}

struct Plan {
  long n, k;
};
const Plan kPlans[] = {{12, 40}, {16, 13}, {20, 7}, {40, 3}};
const mpq_class kErrorThetas[] = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(3, 4)};
const double kPublishedErrors[4][3] = {{6.025e-52, 6.026e-52, 6.024e-52},
                              {7.789e-52, 7.809e-52, 7.770e-52},
                              {5.226e-51, 5.293e-51, 5.161e-51},
                              {1.487e-52, 2.244e-52, 1.210e-52}};

// omega for every (plan, theta) of the error table, plus the reference
struct ErrorTableValues {
  Complex omega[4][3];
  Complex reference[3];
};

const ErrorTableValues& error_table_values() {
  static const ErrorTableValues v = [] {
    ErrorTableValues t;
    PrecisionContext ctx(70);
    for (int j = 0; j < 3; ++j) {
      EvalPoint z(mpq_class(5), kErrorThetas[j]);
      t.reference[j] = omega_reference(z, ctx);
      for (int i = 0; i < 4; ++i)
        t.omega[i][j] = omega(z, TruncationPlan::fixed(kPlans[i].n, kPlans[i].k, z.modulus_exact()), ctx).value;
    }
    return t;
  }();
  return v;
}

Outcome criterion3() {
  Outcome out;
  const auto& t = error_table_values();
  double worst_ratio = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double err = abs(t.omega[i][j] - t.reference[j]).to_double();
      const double ratio = std::max(err / kPublishedErrors[i][j], kPublishedErrors[i][j] / err);
      worst_ratio = std::max(worst_ratio, ratio);
      std::ostringstream cell;
      cell << "N=" << kPlans[i].n << ",K=" << kPlans[i].k << " theta/pi=" << kErrorThetas[j].get_str() << ": "
           << sci(err) << " vs " << sci(kPublishedErrors[i][j]);
      if (err > 1e-50) out.fail(cell.str() + " above 1e-50");
      if (ratio > 10) out.fail(cell.str() + " off by more than 10x");
    }
  }
  out.note("worst ratio to the published cell " + sci(worst_ratio));
  return out;
}

Outcome criterion4() {
  Outcome out;
  PrecisionContext ctx(40);
  const double alpha = approx_params(EvalPoint(mpq_class(8), mpq_class(1, 2)), 26, ctx).alpha.to_double();
  if (std::fabs(alpha - 0.734518) > 5e-7) out.fail("alpha " + std::to_string(alpha));
  char buf[48];
  std::snprintf(buf, sizeof buf, "alpha = %.9f", alpha);
  out.note(buf);
  return out;
}

Outcome criterion5() {
  Outcome out;
  const long n5 = optimal_truncation(mpq_class(5));
  const long n8 = optimal_truncation(mpq_class(8));
  if (n5 != 16) out.fail("N_o(5) = " + std::to_string(n5));
  if (n8 != 26) out.fail("N_o(8) = " + std::to_string(n8));
  out.note("N_o(5) = " + std::to_string(n5) + ", N_o(8) = " + std::to_string(n8));
  return out;
}

Outcome criterion6() {
  Outcome out;
  PrecisionContext ctx(70);
  const std::pair<long, const char*> points[] = {{5, "0.6"}, {5, "0.75"}, {8, "0.55"}};
  for (auto [mod, t] : points) {
    EvalPoint z(mpq_class(mod), parse_rational(t));
    const double r = continuation_identity_residual(z, TruncationPlan::optimal(z.modulus_exact()), ctx).to_double();
    std::string cell = std::to_string(mod) + "e^{" + t + " pi i}: " + sci(r);
    if (!(r < 1e-50)) out.fail(cell);
    else out.note(cell);
  }
  return out;
}

Outcome criterion7() {
  using clock = std::chrono::steady_clock;
  Outcome out;
  PrecisionContext ctx(70);
  EvalPoint z(mpq_class(5), mpq_class(1, 4));
  const TruncationPlan plan = TruncationPlan::adaptive(16, z.modulus_exact());
  auto best_of = [](int runs, const std::function<void()>& f) {
    double best = HUGE_VAL;
    for (int r = 0; r < runs; ++r) {
      auto t0 = clock::now();
      f();
      best = std::min(best, std::chrono::duration<double>(clock::now() - t0).count());
    }
    return best;
  };
  RemainderResult series, quad;
  const double ts = best_of(5, [&] { series = remainder_series(z, plan, ctx); });
  const double tq = best_of(3, [&] { quad = remainder_quadrature(z, plan, ctx); });
  const double rel = (abs(series.value - quad.value) / abs(series.value)).to_double();
  const double agree = rel == 0 ? 70.0 : -std::log10(rel);
  const double speedup = tq / ts;
  if (agree < 40) out.fail("routes agree to " + sci(agree) + " digits");
  if (speedup < 10) out.fail("series only " + sci(speedup) + "x faster");
  std::ostringstream s;
  s.precision(3);
  s << "agreement " << std::floor(agree) << " digits, series " << ts << " s, quadrature " << tq << " s, speedup "
    << speedup << "x";
  out.note(s.str());
  return out;
}

Outcome criterion8() {
  Outcome out;
  PrecisionContext ctx(40);
  const Bits p = ctx.working_bits();
  const Real pi_ = pi(p);
  const std::vector<Real> args = {pi_ / 4,  -pi_ / 4,  pi_ / 2 - Real(0.01, p), -(pi_ / 2 - Real(0.01, p)),
                                  pi_ * 3 / 4, -pi_ * 3 / 4};
  double worst = 0;
  int cells = 0;
  for (long n : {0L, 2L, 10L, 22L}) {
    for (long mod : {1L, 10L, 100L}) {
      for (const Real& a : args) {
        IncGammaRequest req(n, polar(Real(mod, p), a));
        Complex fast = upper_incomplete_gamma(req, ctx);
        Complex slow = incgamma_oracle_quadrature(req, ctx);
        const double rel = (abs(fast - slow) / abs(slow)).to_double();
        worst = std::max(worst, rel);
        ++cells;
        if (!(rel <= 1e-30))
          out.fail("n=" + std::to_string(n) + " |x|=" + std::to_string(mod) + " arg=" +
                   std::to_string(a.to_double()) + ": relative gap " + sci(rel));
      }
    }
  }
  out.note(std::to_string(cells) + " points, worst relative gap " + sci(worst));
  return out;
}

Outcome criterion9() {
  Outcome out;
  std::vector<mpq_class> grid;
  for (int i = 0; i <= 40; ++i) grid.emplace_back(mpq_class(3, 10) + mpq_class(i, 80));
  auto samples = stokes_sweep(mpq_class(8), grid, PrecisionContext(70));
  for (const auto& s : samples)
    if (!s.ok()) out.fail(s.theta_over_pi.get_str() + ": " + s.error);
  if (!out.pass) return out;

  std::vector<std::string> drops;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].s_exact.re() > samples[i - 1].s_exact.re()))
      drops.push_back(cli::format_rational(samples[i].theta_over_pi));
  if (!drops.empty()) {
    std::string list;
    for (const auto& d : drops) list += (list.empty() ? "" : ",") + d;
    out.fail("Re S not increasing at theta/pi = " + list);
  }
  // pairs t and 1 - t, i.e. pi/2 -+ delta, wherever both are on the grid
  double sym = 0;
  double law = 0;
  int pairs = 0;
  for (const auto& a : samples) {
    law = std::max(law, std::fabs((a.s_exact.re() - a.erf_law).to_double()));
    for (const auto& b : samples) {
      if (a.theta_over_pi + b.theta_over_pi != 1 || a.theta_over_pi > b.theta_over_pi) continue;
      sym = std::max(sym, std::fabs((a.s_exact.re() + b.s_exact.re()).to_double() - 1));
      ++pairs;
    }
  }
  if (sym > 1e-6) out.fail("symmetry gap " + sci(sym));
  if (law > 1.2e-2) out.fail("erf law gap " + sci(law));
  out.note(std::to_string(pairs) + " mirrored pairs, symmetry gap " + sci(sym) + ", max |Re S - erf law| " +
           sci(law));
  return out;
}

Outcome criterion10() {
  Outcome out;
  const auto& t = error_table_values();
  double worst = 0;
  for (int j = 0; j < 3; ++j) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        const double gap = abs(t.omega[a][j] - t.omega[b][j]).to_double();
        worst = std::max(worst, gap);
        if (gap > 5e-51) {
          std::ostringstream s;
          s << "theta/pi=" << kErrorThetas[j].get_str() << " (" << kPlans[a].n << "," << kPlans[a].k << ") vs ("
            << kPlans[b].n << "," << kPlans[b].k << "): " << sci(gap);
          out.fail(s.str());
        }
      }
    }
  }
  out.note("largest pairwise gap " + sci(worst));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> checks = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                        criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > 10) {
      std::fprintf(stderr, "criterion must be 1..10, got '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(c);
  }
  if (selected.empty())
    for (int c = 1; c <= 10; ++c) selected.push_back(c);

  bool all = true;
  for (int c : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[c - 1]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::printf("criterion %d: %s (%.2f s)\n", c, o.pass ? "PASS" : "FAIL", secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
