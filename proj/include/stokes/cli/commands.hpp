#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "stokes/cli/config.hpp"
#include "stokes/cli/output.hpp"
#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/expansion/omega.hpp"
#include "stokes/expansion/reference.hpp"
#include "stokes/expansion/remainder.hpp"
#include "stokes/multiplier/sweep.hpp"

namespace stokes::cli {

enum ExitStatus : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitConvergence = 4,
  kExitPrecision = 5,
};

inline int exit_status(FailureKind kind) {
  switch (kind) {
    case FailureKind::none: return kExitOk;
    case FailureKind::domain: return kExitDomain;
    case FailureKind::convergence: return kExitConvergence;
    case FailureKind::precision: return kExitPrecision;
    case FailureKind::other: return kExitFailure;
  }
  return kExitFailure;
}

inline const char* failure_name(FailureKind kind) {
  switch (kind) {
    case FailureKind::none: return "ok";
    case FailureKind::domain: return "domain error";
    case FailureKind::convergence: return "convergence error";
    case FailureKind::precision: return "precision error";
    case FailureKind::other: return "error";
  }
  return "error";
}

struct CommandResult {
  std::string body;
  int status = kExitOk;
  std::vector<std::string> warnings;
};

/// Runs `f`, classifying a thrown library error.
template <class F>
FailureKind guarded(F&& f, std::string& message) {
  try {
    f();
    return FailureKind::none;
  } catch (const DomainError& e) {
    message = e.what();
    return FailureKind::domain;
  } catch (const ConvergenceError& e) {
    message = e.what();
    return FailureKind::convergence;
  } catch (const PrecisionError& e) {
    message = e.what();
    return FailureKind::precision;
  }
}

/// One-row tables (eval, bench) print as "key: value" lines in text mode.
inline std::string render(const Table& t, Format format, bool vertical_text = false) {
  switch (format) {
    case Format::csv: return render_csv(t);
    case Format::json: return render_json(t);
    case Format::text: break;
  }
  if (!vertical_text || t.rows.size() != 1 || t.rows[0].comment) return render_text(t);
  std::size_t w = 0;
  for (const auto& c : t.columns) w = std::max(w, c.size());
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    out += t.columns[i] + ":" + std::string(w - t.columns[i].size() + 1, ' ') + t.rows[0].cells[i] + "\n";
  return out;
}

inline CommandResult cmd_eval(const RunConfig& cfg) {
  PrecisionContext ctx(cfg.digits);
  const long d = cfg.digits;
  EvalPoint point(*cfg.modulus, cfg.theta_grid.front());
  const long n_opt = optimal_truncation(*cfg.modulus);
  TruncationPlan plan(cfg.n_trunc.value_or(n_opt), cfg.k_trunc, n_opt);
  OmegaResult om = omega(point, plan, ctx);
  Complex lg = om.value + log_gamma_elementary(point.z(ctx.working_bits()), ctx);

  Table t;
  t.columns = {"modulus", "theta_over_pi", "sector", "N", "K", "N_optimal", "re_omega", "im_omega",
               "re_log_gamma", "im_log_gamma", "re_series", "im_series", "re_remainder", "im_remainder",
               "re_continuation", "im_continuation", "tail_bound"};
  std::vector<std::string> row = {format_rational(*cfg.modulus),
                                  format_rational(cfg.theta_grid.front()),
                                  point.sector() == Sector::upper ? "upper" : "lower",
                                  std::to_string(plan.n_terms),
                                  std::to_string(om.k_terms) + (plan.adaptive_k() ? " (auto)" : ""),
                                  std::to_string(n_opt),
                                  format_sci(om.value.re(), d),
                                  format_sci(om.value.im(), d),
                                  format_sci(lg.re(), d),
                                  format_sci(lg.im(), d),
                                  format_sci(om.series_part.re(), d),
                                  format_sci(om.series_part.im(), d),
                                  format_sci(om.remainder_part.re(), d),
                                  format_sci(om.remainder_part.im(), d),
                                  format_sci(om.continuation_term.re(), d),
                                  format_sci(om.continuation_term.im(), d),
                                  format_sci(om.tail_bound, 4)};
  if (cfg.with_reference) {
    Complex ref = log_gamma_reference(point, ctx);
    t.columns.push_back("abs_error_vs_reference");
    row.push_back(format_sci(abs(lg - ref), 4));
  }
  t.add(std::move(row));
  return {render(t, cfg.format, true), kExitOk, om.warnings};
}

inline CommandResult cmd_error_table(const RunConfig& cfg) {
  PrecisionContext ctx(cfg.digits);
  const long d = cfg.digits;
  const auto& grid = cfg.theta_grid;
  CommandResult res;

  struct Cell {
    FailureKind kind = FailureKind::none;
    std::string message;
    Real error;
    Real tail;
  };
  std::vector<std::vector<Cell>> cells(cfg.plans.size(), std::vector<Cell>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    EvalPoint point(*cfg.modulus, grid[j]);
    Complex ref(ctx.working_bits());
    std::string ref_msg;
    FailureKind ref_kind = guarded([&] { ref = omega_reference(point, ctx); }, ref_msg);
    for (std::size_t i = 0; i < cfg.plans.size(); ++i) {
      Cell& c = cells[i][j];
      if (ref_kind != FailureKind::none) {
        c.kind = ref_kind;
        c.message = "reference: " + ref_msg;
        continue;
      }
      c.kind = guarded(
          [&] {
            auto plan = TruncationPlan::fixed(cfg.plans[i].n, cfg.plans[i].k, *cfg.modulus);
            OmegaResult om = omega(point, plan, ctx);
            c.error = abs(om.value - ref);
            c.tail = om.tail_bound;
            for (auto& w : om.warnings)
              if (std::find(res.warnings.begin(), res.warnings.end(), w) == res.warnings.end())
                res.warnings.push_back(w);
          },
          c.message);
    }
  }

  auto fail_text = [&](std::size_t i, std::size_t j) {
    const Cell& c = cells[i][j];
    return "N=" + std::to_string(cfg.plans[i].n) + " K=" + std::to_string(cfg.plans[i].k) +
           " theta_over_pi=" + format_rational(grid[j]) + ": " + failure_name(c.kind) + ": " + c.message;
  };
  for (std::size_t i = 0; i < cfg.plans.size() && res.status == kExitOk; ++i)
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (cells[i][j].kind != FailureKind::none) {
        res.status = exit_status(cells[i][j].kind);
        break;
      }

  Table t;
  if (cfg.format == Format::text) {
    // Rows are plans, columns are angles.
    t.columns = {"plan"};
    for (const auto& th : grid) t.columns.push_back("theta/pi=" + format_rational(th));
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < cfg.plans.size(); ++i) {
      std::vector<std::string> row = {"N=" + std::to_string(cfg.plans[i].n) + ", K=" + std::to_string(cfg.plans[i].k)};
      for (std::size_t j = 0; j < grid.size(); ++j) {
        if (cells[i][j].kind == FailureKind::none) {
          row.push_back(format_sci(cells[i][j].error, 4));
        } else {
          row.push_back(std::string("[") + failure_name(cells[i][j].kind) + "]");
          failures.push_back(fail_text(i, j));
        }
      }
      t.add(std::move(row));
    }
    for (auto& f : failures) t.add_failure(std::move(f));
  } else {
    t.columns = {"N", "K", "theta_over_pi", "abs_error", "tail_bound"};
    for (std::size_t i = 0; i < cfg.plans.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const Cell& c = cells[i][j];
        if (c.kind != FailureKind::none) {
          t.add_failure(fail_text(i, j));
          continue;
        }
        t.add({std::to_string(cfg.plans[i].n), std::to_string(cfg.plans[i].k), format_rational(grid[j]),
               format_sci(c.error, d), format_sci(c.tail, d)});
      }
  }
  res.body = render(t, cfg.format);
  return res;
}

namespace detail {

inline std::string sample_failure(const StokesSample& s) {
  return "theta_over_pi=" + format_rational(s.theta_over_pi) + ": " + failure_name(s.failure) + ": " + s.error;
}

inline int first_failure_status(const std::vector<StokesSample>& rows) {
  for (const auto& s : rows)
    if (!s.ok()) return exit_status(s.failure);
  return kExitOk;
}

}  // namespace detail

inline CommandResult cmd_stokes_table(const RunConfig& cfg) {
  PrecisionContext ctx(cfg.digits);
  auto rows = stokes_sweep(*cfg.modulus, cfg.theta_grid, ctx, cfg.threads);
  Table t;
  if (cfg.format == Format::text) {
    t.columns = {"theta/pi", "S exact", "S approx"};
    for (const auto& s : rows) {
      if (!s.ok()) {
        t.add_failure(detail::sample_failure(s));
        continue;
      }
      t.add({format_rational(s.theta_over_pi), format_complex_fixed(s.s_exact, 7), format_complex_fixed(s.s_approx, 7)});
    }
  } else {
    t.columns = {"theta_over_pi", "re_S_exact", "im_S_exact", "re_S_approx", "im_S_approx"};
    const long d = cfg.digits;
    for (const auto& s : rows) {
      if (!s.ok()) {
        t.add_failure(detail::sample_failure(s));
        continue;
      }
      t.add({format_rational(s.theta_over_pi), format_sci(s.s_exact.re(), d), format_sci(s.s_exact.im(), d),
             format_sci(s.s_approx.re(), d), format_sci(s.s_approx.im(), d)});
    }
  }
  return {render(t, cfg.format), detail::first_failure_status(rows), {}};
}

inline const std::vector<std::string>& smoothing_curve_columns() {
  static const std::vector<std::string> cols = {"theta_over_pi", "re_S_exact", "im_S_exact",
                                                "re_S_approx",   "im_S_approx", "erf_law"};
  return cols;
}

/// Always CSV unless JSON is asked for.
inline CommandResult cmd_smoothing_curve(const RunConfig& cfg) {
  PrecisionContext ctx(cfg.digits);
  const long d = cfg.digits;
  auto rows = stokes_sweep(*cfg.modulus, cfg.theta_grid, ctx, cfg.threads);
  Table t;
  t.columns = smoothing_curve_columns();
  for (const auto& s : rows) {
    if (!s.ok()) {
      t.add_failure(detail::sample_failure(s));
      continue;
    }
    t.add({format_rational(s.theta_over_pi), format_sci(s.s_exact.re(), d), format_sci(s.s_exact.im(), d),
           format_sci(s.s_approx.re(), d), format_sci(s.s_approx.im(), d), format_sci(s.erf_law, d)});
  }
  std::string body = cfg.format == Format::json ? render_json(t) : render_csv(t);
  return {body, detail::first_failure_status(rows), {}};
}

/// Remainder by both routes at matched tolerance, timed, each checked
/// against the reference.
inline CommandResult cmd_bench(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  PrecisionContext ctx(cfg.digits);
  const Bits p = ctx.working_bits();
  EvalPoint point(*cfg.modulus, cfg.theta_grid.front());
  const long n_opt = optimal_truncation(*cfg.modulus);
  TruncationPlan plan(*cfg.n_trunc, cfg.k_trunc, n_opt);

  // reference remainder (plus the continuation term above the Stokes line)
  Complex ref_rem = omega_reference(point, ctx) - stirling_partial_sum(point.z(p), plan.n_terms, ctx);
  if (point.sector() == Sector::upper) ref_rem -= continuation_term(point.z(p), ctx);

  auto seconds = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };
  auto rel = [&](const Complex& v) { return abs(v - ref_rem) / abs(ref_rem); };

  // best of a few runs, so one-off cache fills do not count
  constexpr int kRuns = 3;
  auto best_of = [&](auto&& f) {
    double best = HUGE_VAL;
    for (int r = 0; r < kRuns; ++r) {
      auto t0 = clock::now();
      f();
      best = std::min(best, seconds(t0, clock::now()));
    }
    return best;
  };

  RemainderResult series;
  const double series_s = best_of([&] { series = remainder_series(point, plan, ctx); });

  std::optional<RemainderResult> quad;
  std::string quad_msg;
  double quad_s = 0;
  guarded([&] { quad_s = best_of([&] { quad = remainder_quadrature(point, plan, ctx); }); }, quad_msg);

  Table t;
  t.columns = {"modulus", "theta_over_pi", "N", "digits", "series_seconds", "series_terms", "re_remainder",
               "im_remainder", "series_rel_error", "quadrature_status", "quadrature_seconds", "quadrature_rel_error",
               "route_agreement_digits", "speedup"};
  std::vector<std::string> row = {format_rational(*cfg.modulus), format_rational(cfg.theta_grid.front()),
                                  std::to_string(plan.n_terms), std::to_string(cfg.digits),
                                  format_sci(Real(series_s, 64), 3), std::to_string(series.terms),
                                  format_sci(series.value.re(), cfg.digits), format_sci(series.value.im(), cfg.digits),
                                  format_sci(rel(series.value), 3)};
  if (quad) {
    Real agree = abs(quad->value - series.value) / abs(series.value);
    double digits = agree.is_zero() ? static_cast<double>(cfg.digits) : -std::log10(agree.to_double());
    row.insert(row.end(), {"ok", format_sci(Real(quad_s, 64), 3), format_sci(rel(quad->value), 3),
                           format_fixed(Real(std::floor(digits), 64), 0),
                           format_fixed(Real(quad_s / std::max(series_s, 1e-9), 64), 1)});
  } else {
    row.insert(row.end(), {std::string("refused: ") + quad_msg, "-", "-", "-", "-"});
  }
  t.add(std::move(row));
  return {render(t, cfg.format, true), kExitOk, {}};
}

inline CommandResult run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::eval: return cmd_eval(cfg);
    case Command::error_table: return cmd_error_table(cfg);
    case Command::stokes_table: return cmd_stokes_table(cfg);
    case Command::smoothing_curve: return cmd_smoothing_curve(cfg);
    case Command::bench: return cmd_bench(cfg);
  }
  throw UsageError("unknown command");
}

}  // namespace stokes::cli
