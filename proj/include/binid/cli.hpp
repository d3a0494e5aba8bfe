#pragma once

// Command-line front end: `binid verify | quadrature | simulate`.
//
// Exit codes: 0 every row passed, 1 usage or precondition error, 2 at least
// one verification or statistical gate failed.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "binid/exact_arith.hpp"

namespace binid::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Overrides the default --seed of `simulate`.
inline constexpr const char* kSeedEnvVar = "BINID_SEED";

std::string_view tool_version() noexcept;

struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  std::string timestamp;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

/// ISO-8601 UTC time of the run. SOURCE_DATE_EPOCH, when set, replaces the
/// wall clock so reports can be reproduced byte for byte.
std::string run_timestamp();

enum class ReportFormat { Json, Csv, Markdown };

std::optional<ReportFormat> parse_format(std::string_view name) noexcept;

/// "7", "0..100" or "1,2,5,10"; every entry must be a non-negative integer.
std::vector<unsigned> parse_index_list(std::string_view text);

/// Comma-separated exact rationals ("1/7,2,1000/3"). Decimals are rejected.
std::vector<Rational> parse_exact_list(std::string_view text);

/// Comma-separated rationals or finite decimal literals ("0.5,1,1/3"); a
/// decimal literal is converted to the rational it denotes exactly.
std::vector<Rational> parse_decimal_list(std::string_view text);

/// 17 significant digits ("%.17g").
std::string format_double(double v);

/// One rendered table: column names and one string cell per column. Cells
/// that hold JSON numbers or booleans are tagged so the JSON writer can emit
/// them with their native type.
struct Cell {
  enum class Kind { String, Integer, Real, Boolean, Null };
  Kind kind = Kind::Null;
  std::string text;
  double real = 0.0;
  std::int64_t integer = 0;
  bool boolean = false;

  static Cell string(std::string s);
  static Cell integer_value(std::int64_t v);
  static Cell real_value(double v);
  static Cell boolean_value(bool b);
  static Cell null();

  std::string to_text() const;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// JSON: {"manifest": {...}, "rows": [{...}, ...], "passed": bool}.
/// CSV: "# manifest: <json>" comment line, header, rows.
/// Markdown: manifest bullet list followed by a pipe table.
std::string render_report(const RunManifest& manifest, const Table& table, bool passed, ReportFormat format);

/// Parses argv-style arguments (without the program name), runs the command
/// and writes the report to `out` (or --output), diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace binid::cli
