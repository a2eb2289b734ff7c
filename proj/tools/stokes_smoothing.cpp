#include <CLI/CLI.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "stokes/cli/commands.hpp"
#include "stokes/cli/config.hpp"

using namespace stokes;
using namespace stokes::cli;

namespace {

struct RawOptions {
  std::string modulus;
  std::string theta;
  std::string grid;
  std::optional<long> digits;
  std::string n_trunc = "auto";
  std::string k_trunc = "auto";
  std::string plans;
  std::string format = "text";
  std::string output;
  unsigned threads = 0;
  bool no_reference = false;
};

void add_common(CLI::App* sub, RawOptions& o) {
  sub->add_option("--modulus", o.modulus, "|z| (decimal or p/q)");
  sub->add_option("--theta-pi", o.theta, "theta/pi: a value, a comma list, or start:stop:step");
  sub->add_option("--grid", o.grid, "alias of --theta-pi for grid commands");
  sub->add_option("--digits", o.digits, "decimal digits (env STOKES_SMOOTHING_DIGITS, default 70)");
  sub->add_option("--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--output", o.output, "write to this file instead of stdout");
  sub->add_option("--threads", o.threads, "worker threads for grid commands (0: all cores)");
}

RunConfig build_config(Command cmd, const RawOptions& o) {
  RunConfig cfg;
  cfg.command = cmd;
  if (!o.modulus.empty()) cfg.modulus = parse_number(o.modulus);
  if (!o.theta.empty() && !o.grid.empty()) throw UsageError("give either --theta-pi or --grid");
  const std::string& grid = o.theta.empty() ? o.grid : o.theta;
  if (!grid.empty()) cfg.theta_grid = parse_grid(grid);
  cfg.digits = resolve_digits(o.digits);
  cfg.n_trunc = parse_count(o.n_trunc, "--N");
  cfg.k_trunc = parse_count(o.k_trunc, "--K");
  if (!o.plans.empty()) cfg.plans = parse_plans(o.plans);
  static const std::map<std::string, Format> formats = {
      {"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}};
  cfg.format = formats.at(o.format);
  if (cmd == Command::smoothing_curve && o.format == "text") cfg.format = Format::csv;
  if (!o.output.empty()) cfg.output_path = o.output;
  cfg.threads = o.threads;
  cfg.with_reference = !o.no_reference;
  apply_defaults(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponentially improved log-gamma expansion and Stokes multiplier smoothing"};
  app.require_subcommand(1);
  RawOptions o;

  auto* eval = app.add_subcommand("eval", "Omega(z) and log Gamma(z) at one point");
  add_common(eval, o);
  eval->add_option("--N", o.n_trunc, "Stirling terms (integer or auto = ceil(pi |z|))");
  eval->add_option("--K", o.k_trunc, "remainder terms (integer or auto)");
  eval->add_flag("--no-reference", o.no_reference, "skip the reference comparison");

  auto* error_table = app.add_subcommand("error-table", "absolute error of Omega against the reference");
  add_common(error_table, o);
  error_table->add_option("--plans", o.plans, "N:K pairs, e.g. 12:40,16:13 (default: four plans)");

  auto* stokes_table = app.add_subcommand("stokes-table", "exact and approximate Stokes multiplier");
  add_common(stokes_table, o);

  auto* curve = app.add_subcommand("smoothing-curve", "CSV of S(theta) and the erf law over a grid");
  add_common(curve, o);

  auto* bench = app.add_subcommand("bench", "incomplete-gamma series vs quadrature for the remainder");
  add_common(bench, o);
  bench->add_option("--N", o.n_trunc, "Stirling terms (default 16)");
  bench->add_option("--K", o.k_trunc, "remainder terms (integer or auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Command cmd = Command::eval;
  if (*error_table) cmd = Command::error_table;
  if (*stokes_table) cmd = Command::stokes_table;
  if (*curve) cmd = Command::smoothing_curve;
  if (*bench) cmd = Command::bench;
  if (cmd == Command::bench && o.n_trunc == "auto") o.n_trunc = "16";

  try {
    RunConfig cfg = build_config(cmd, o);
    CommandResult res = run_command(cfg);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (cfg.output_path) {
      std::ofstream out(*cfg.output_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open " << *cfg.output_path << "\n";
        return kExitFailure;
      }
      out << res.body;
    } else {
      std::cout << res.body;
    }
    return res.status;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (achieved " << e.achieved_estimate() << ")\n";
    return kExitConvergence;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << " (needs " << e.required_guard_digits() << " guard digits)\n";
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
