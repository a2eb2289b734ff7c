#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"

namespace stokes::cli {

/// Bad command-line input; maps to the usage exit status.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { eval, error_table, stokes_table, smoothing_curve, bench };
enum class Format { text, csv, json };

inline constexpr long kDefaultDigits = 70;
inline constexpr const char* kDigitsEnv = "STOKES_SMOOTHING_DIGITS";

struct Plan {
  long n;
  long k;
};

struct RunConfig {
  Command command = Command::eval;
  std::optional<mpq_class> modulus;
  std::vector<mpq_class> theta_grid;
  long digits = kDefaultDigits;
  std::optional<long> n_trunc;  // empty: auto
  std::optional<long> k_trunc;  // empty: auto
  std::vector<Plan> plans;      // error-table
  Format format = Format::text;
  std::optional<std::string> output_path;
  unsigned threads = 0;
  bool with_reference = true;
};

inline mpq_class parse_number(std::string_view text) {
  try {
    return parse_rational(text);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

/// "0.5", "0.325,0.35,0.4" or "start:stop:step" (stop included when hit
/// exactly); all values kept as exact rationals.
inline std::vector<mpq_class> parse_grid(std::string_view spec) {
  std::string s(spec);
  std::vector<mpq_class> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
      std::size_t colon = s.find(':', start);
      parts.push_back(s.substr(start, colon - start));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) throw UsageError("grid spec must be start:stop:step, got '" + s + "'");
    mpq_class a = parse_number(parts[0]);
    mpq_class b = parse_number(parts[1]);
    mpq_class h = parse_number(parts[2]);
    if (h <= 0) throw UsageError("grid step must be positive");
    if (b < a) throw UsageError("grid stop must not be below start");
    for (mpq_class v = a; v <= b; v += h) out.push_back(v);
  } else {
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = s.find(',', start);
      out.push_back(parse_number(s.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (out.empty()) throw UsageError("empty grid '" + s + "'");
  return out;
}

/// "auto" or a positive integer.
inline std::optional<long> parse_count(std::string_view text, const char* what) {
  if (text == "auto") return std::nullopt;
  std::string s(text);
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || v < 1)
    throw UsageError(std::string(what) + " must be a positive integer or 'auto', got '" + s + "'");
  return v;
}

/// "12:40,16:13" -> plans.
inline std::vector<Plan> parse_plans(std::string_view text) {
  std::vector<Plan> out;
  std::string s(text);
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma - start);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("plan must be N:K, got '" + item + "'");
    auto n = parse_count(item.substr(0, colon), "N");
    auto k = parse_count(item.substr(colon + 1), "K");
    if (!n || !k) throw UsageError("plans need explicit N and K");
    out.push_back({*n, *k});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Flag value if given, else the environment variable, else the default.
inline long resolve_digits(std::optional<long> flag) {
  long d = kDefaultDigits;
  if (flag) {
    d = *flag;
  } else if (const char* env = std::getenv(kDigitsEnv); env && *env) {
    char* end = nullptr;
    d = std::strtol(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string(kDigitsEnv) + " is not an integer: '" + env + "'");
  }
  if (d < PrecisionContext::kMinDigits)
    throw UsageError("digits must be >= " + std::to_string(PrecisionContext::kMinDigits));
  return d;
}

inline const std::vector<mpq_class>& multiplier_grid() {
  static const std::vector<mpq_class> grid = parse_grid("0.325,0.35,0.4,0.45,0.475,0.5,0.525,0.55,0.6,0.65,0.7,0.75");
  return grid;
}

inline std::vector<Plan> error_plans() { return {{12, 40}, {16, 13}, {20, 7}, {40, 3}}; }

/// Fills per-command defaults and checks what each command needs.
inline void apply_defaults(RunConfig& cfg) {
  switch (cfg.command) {
    case Command::eval:
      if (!cfg.modulus) throw UsageError("eval needs --modulus");
      if (cfg.theta_grid.size() != 1) throw UsageError("eval needs a single --theta-pi value");
      break;
    case Command::error_table:
      if (!cfg.modulus) cfg.modulus = mpq_class(5);
      if (cfg.theta_grid.empty()) cfg.theta_grid = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(3, 4)};
      if (cfg.plans.empty()) cfg.plans = error_plans();
      break;
    case Command::stokes_table:
      if (!cfg.modulus) cfg.modulus = mpq_class(8);
      if (cfg.theta_grid.empty()) cfg.theta_grid = multiplier_grid();
      break;
    case Command::smoothing_curve:
      if (!cfg.modulus) cfg.modulus = mpq_class(8);
      if (cfg.theta_grid.empty()) cfg.theta_grid = parse_grid("0.30:0.80:0.0125");
      break;
    case Command::bench:
      if (!cfg.modulus) cfg.modulus = mpq_class(5);
      if (cfg.theta_grid.empty()) cfg.theta_grid = {mpq_class(1, 3)};
      if (cfg.theta_grid.size() != 1) throw UsageError("bench needs a single --theta-pi value");
      if (!cfg.n_trunc) cfg.n_trunc = 16;
      break;
  }
  if (*cfg.modulus <= 0) throw UsageError("--modulus must be positive");
  for (const auto& t : cfg.theta_grid)
    if (t < 0 || t >= 1) throw UsageError("--theta-pi values must lie in [0, 1)");
}

}  // namespace stokes::cli
