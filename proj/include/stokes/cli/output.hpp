#pragma once

// Number rendering and the row/column table shared by the CLI commands, with
// text, CSV and JSON renderers and a CSV reader for round-trip checks.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stokes/core/complex.hpp"
#include "stokes/core/errors.hpp"

namespace stokes::cli {

namespace detail {

inline std::string mpfr_format(const char* fmt, int width, const Real& x) {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, fmt, width, x.raw()) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::unique_ptr<char, decltype(&mpfr_free_str)> guard(buf, &mpfr_free_str);
  return std::string(buf);
}

inline bool all_zero_digits(const std::string& s) {
  return std::none_of(s.begin(), s.end(), [](char c) { return c >= '1' && c <= '9'; });
}

}  // namespace detail

/// Scientific notation with `digits` significant figures, e.g. 8.106e-02.
inline std::string format_sci(const Real& x, long digits) {
  std::string s = detail::mpfr_format("%.*Re", static_cast<int>(std::max(1L, digits) - 1), x);
  if (s[0] == '-' && detail::all_zero_digits(s)) s.erase(0, 1);
  return s;
}

/// Fixed notation with `decimals` places; a rounded-away sign on zero is dropped.
inline std::string format_fixed(const Real& x, int decimals) {
  std::string s = detail::mpfr_format("%.*Rf", decimals, x);
  if (s[0] == '-' && detail::all_zero_digits(s)) s.erase(0, 1);
  return s;
}

/// a+bi / a-bi with fixed decimals.
inline std::string format_complex_fixed(const Complex& z, int decimals) {
  std::string re = format_fixed(z.re(), decimals);
  std::string im = format_fixed(z.im(), decimals);
  if (im[0] == '-') return re + im + "i";
  return re + "+" + im + "i";
}

/// Exact decimal when the denominator divides a power of ten, else p/q.
inline std::string format_rational(const mpq_class& q) {
  mpz_class den = q.get_den();
  long twos = 0;
  long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return q.get_str();
  const long places = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  mpz_class scaled = q.get_num() * scale / q.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (places > 0) {
    if (static_cast<long>(digits.size()) <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

/// A result table. A row with a comment is a failed row: it renders as a
/// `# ...` line in CSV and text, and as {"error": ...} in JSON.
struct Table {
  struct Row {
    std::vector<std::string> cells;
    std::optional<std::string> comment;
  };
  std::vector<std::string> columns;
  std::vector<Row> rows;

  void add(std::vector<std::string> cells) { rows.push_back({std::move(cells), std::nullopt}); }
  void add_failure(std::string comment) { rows.push_back({{}, std::move(comment)}); }
  bool has_failures() const {
    return std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.comment.has_value(); });
  }
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string render_csv(const Table& t) {
  std::string out = join(t.columns, ",") + "\n";
  for (const auto& r : t.rows) out += (r.comment ? "# " + *r.comment : join(r.cells, ",")) + "\n";
  return out;
}

/// Inverse of render_csv for tables whose cells contain no commas or newlines.
inline Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = s.find(',', start);
      cells.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    if (header) {
      t.columns = split(line);
      header = false;
    } else if (line.rfind("# ", 0) == 0) {
      t.add_failure(line.substr(2));
    } else {
      auto cells = split(line);
      if (cells.size() != t.columns.size()) throw DomainError("parse_csv: ragged row '" + line + "'");
      t.add(std::move(cells));
    }
  }
  if (header) throw DomainError("parse_csv: missing header row");
  return t;
}

/// Array of objects keyed by column name; values stay strings so that no
/// digits are lost to binary floating point.
inline std::string render_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    if (r.comment) {
      obj["error"] = *r.comment;
    } else {
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = r.cells[i];
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

/// Space-aligned columns.
inline std::string render_text(const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& r : t.rows)
    if (!r.comment)
      for (std::size_t i = 0; i < r.cells.size(); ++i) width[i] = std::max(width[i], r.cells[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      s += cells[i];
      if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
    }
    return s + "\n";
  };
  std::string out = line(t.columns);
  for (const auto& r : t.rows) out += r.comment ? "# " + *r.comment + "\n" : line(r.cells);
  return out;
}

}  // namespace stokes::cli
