#include "binid/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <regex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "binid/identities.hpp"
#include "binid/laplace_numeric.hpp"
#include "binid/montecarlo.hpp"

#ifndef BINID_VERSION
#define BINID_VERSION "0.0.0"
#endif

namespace binid::cli {

namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

unsigned parse_unsigned(std::string_view text) {
  unsigned v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::ParseError, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::string join(const std::vector<Rational>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    out += v.to_string();
  }
  return out;
}

std::string join(const std::vector<unsigned>& values) {
  std::string out;
  for (unsigned v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

/// Decimal literal such as "-0.125" or "2.5e-3" to the exact rational it
/// denotes; integer and "p/q" inputs go through Rational::parse.
Rational parse_decimal_rational(std::string_view text) {
  if (text.find('/') != std::string_view::npos ||
      text.find_first_of(".eE") == std::string_view::npos) {
    return Rational::parse(text);
  }
  const std::string whole(text);
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    bool negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    exponent = static_cast<long>(parse_unsigned(exp_text));
    if (negative) exponent = -exponent;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  for (std::size_t i = 0; i < mantissa.size(); ++i) {
    const char c = mantissa[i];
    if (i == 0 && (c == '-' || c == '+')) {
      if (c == '-') digits += '-';
      continue;
    }
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "not a decimal number: '" + whole + "'");
    digits += c;
    if (seen_point) ++fraction_digits;
  }
  if (digits.empty() || digits == "-") throw Error(ErrorCode::ParseError, "not a decimal number: '" + whole + "'");
  const long shift = exponent - fraction_digits;
  if (std::abs(shift) > 1000) throw Error(ErrorCode::ParseError, "exponent out of range: '" + whole + "'");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
  const BigInt num(digits, 10);
  return shift >= 0 ? Rational(BigInt(num * scale)) : Rational(num, scale);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::InternalRouteMismatch ? kExitFailure : kExitUsage;
}

struct Emitter {
  std::string output_path;
  std::ostream& out;

  void emit(const std::string& text) const {
    if (output_path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(output_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot open output file '" + output_path + "'");
    file << text;
  }
};

RunManifest make_manifest(std::string command, std::map<std::string, std::string> parameters,
                          std::optional<std::uint64_t> seed) {
  return RunManifest{std::move(command), std::move(parameters), seed, std::string(tool_version()), run_timestamp()};
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string identity = "all";
  std::string s;
  std::string n;
  std::string m;
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto format = parse_format(args.format);
  if (!format) throw Error(ErrorCode::ParseError, "unknown format '" + args.format + "'");

  std::vector<IdentityId> ids;
  if (args.identity == "all") {
    ids.assign(kAllIdentities.begin(), kAllIdentities.end());
  } else if (const auto id = parse_identity(args.identity)) {
    ids.push_back(*id);
  } else {
    throw Error(ErrorCode::UnknownIdentity, "'" + args.identity + "'");
  }

  SweepGrid grid = default_sweep_grid();
  if (!args.s.empty()) grid.s_values = parse_exact_list(args.s);
  for (const auto& s : grid.s_values) {
    if (s.sign() <= 0) throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + s.to_string());
  }
  auto apply_range = [](const std::string& text, unsigned& lo, unsigned& hi) {
    if (text.empty()) return;
    const auto values = parse_index_list(text);
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (static_cast<std::size_t>(*mx - *mn + 1) != values.size()) {
      throw Error(ErrorCode::ParseError, "ranges must be contiguous: '" + text + "'");
    }
    lo = *mn;
    hi = *mx;
  };
  apply_range(args.n, grid.n_min, grid.n_max);
  apply_range(args.m, grid.m_min, grid.m_max);
  if (grid.m_min == 0) throw Error(ErrorCode::MRequired, "m must be >= 1");

  SweepOptions options;
  options.threads = args.threads;
  // Explicit n ranges are taken literally; the default grid and "all" follow
  // each identity's own domain.
  options.skip_out_of_domain = args.identity == "all" || args.n.empty();

  const auto reports = sweep(ids, grid, options);

  Table table;
  table.columns = {"identity", "s", "n", "m", "lhs", "rhs", "equal"};
  bool passed = true;
  for (const auto& r : reports) {
    passed = passed && r.equal;
    table.rows.push_back({Cell::string(std::string(to_string(r.identity))),
                          Cell::string(r.params.s.to_fraction_string()), Cell::integer_value(r.params.n),
                          r.params.m ? Cell::integer_value(*r.params.m) : Cell::null(),
                          Cell::string(r.lhs.to_fraction_string()), Cell::string(r.rhs.to_fraction_string()),
                          Cell::boolean_value(r.equal)});
  }

  const RunManifest manifest = make_manifest(
      "verify",
      {{"identity", args.identity},
       {"s", join(grid.s_values)},
       {"n", std::to_string(grid.n_min) + ".." + std::to_string(grid.n_max)},
       {"m", std::to_string(grid.m_min) + ".." + std::to_string(grid.m_max)},
       {"format", args.format}},
      std::nullopt);
  Emitter{args.output, out}.emit(render_report(manifest, table, passed, *format));
  return passed ? kExitPass : kExitFailure;
}

// --- quadrature --------------------------------------------------------------

struct QuadratureArgs {
  std::string s = "0.5,1,2,10";
  std::string n = "0..30";
  double tol = 1e-10;
  std::string format = "json";
  std::string output;
};

int cmd_quadrature(const QuadratureArgs& args, std::ostream& out) {
  const auto format = parse_format(args.format);
  if (!format) throw Error(ErrorCode::ParseError, "unknown format '" + args.format + "'");
  if (!(args.tol >= kMinTolerance) || !std::isfinite(args.tol)) {
    throw Error(ErrorCode::InvalidTolerance, "tolerance must be >= 1e-13, got " + format_double(args.tol));
  }
  const auto s_values = parse_decimal_list(args.s);
  for (const auto& s : s_values) {
    if (s.sign() <= 0) throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + s.to_string());
  }
  const auto n_values = parse_index_list(args.n);

  struct Point {
    Rational s;
    unsigned n;
  };
  std::vector<Point> points;
  for (unsigned n : n_values) {
    for (const auto& s : s_values) points.push_back({s, n});
  }

  const double gate = 10.0 * args.tol;
  std::vector<std::vector<Cell>> rows(points.size());
  std::vector<char> ok(points.size(), 0);
  parallel_for(points.size(), [&](std::size_t i) {
    const auto& [s, n] = points[i];
    const Rational exact = eval_basic_rhs(s, n);
    const double exact_d = exact.to_double();
    const double s_d = s.to_double();
    bool pass = true;
    std::string error;
    std::vector<Cell> row = {Cell::string(s.to_fraction_string()), Cell::integer_value(n),
                             Cell::string(exact.to_fraction_string()), Cell::real_value(exact_d)};
    auto route = [&](auto&& integrate, bool applicable) {
      if (!applicable) {
        row.insert(row.end(), {Cell::null(), Cell::null(), Cell::null()});
        return;
      }
      try {
        const QuadratureResult q = integrate();
        const double abs_error = std::abs(q.value - exact_d);
        pass = pass && abs_error <= gate;
        row.insert(row.end(), {Cell::real_value(q.value), Cell::real_value(q.estimated_error),
                               Cell::real_value(abs_error)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ToleranceNotMet) throw;
        pass = false;
        if (!error.empty()) error += "; ";
        error += e.what();
        row.insert(row.end(), {Cell::null(), Cell::null(), Cell::null()});
      }
    };
    route([&] { return laplace_via_cdf_quadrature(s_d, n, args.tol); }, true);
    route([&] { return laplace_via_density_quadrature(s_d, n, args.tol); }, n >= 1);
    row.push_back(Cell::boolean_value(pass));
    row.push_back(error.empty() ? Cell::null() : Cell::string(error));
    rows[i] = std::move(row);
    ok[i] = pass;
  });

  Table table;
  table.columns = {"s",          "n",
                   "exact",      "exact_decimal",
                   "cdf_value",  "cdf_error_estimate",
                   "cdf_abs_error", "density_value",
                   "density_error_estimate", "density_abs_error",
                   "passed",     "error"};
  table.rows = std::move(rows);
  const bool passed = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });

  const RunManifest manifest = make_manifest(
      "quadrature",
      {{"s", join(s_values)}, {"n", join(n_values)}, {"tol", format_double(args.tol)}, {"format", args.format}},
      std::nullopt);
  Emitter{args.output, out}.emit(render_report(manifest, table, passed, *format));
  return passed ? kExitPass : kExitFailure;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
  std::string suite;
  std::string n = "1,2,5,10";
  unsigned m = 1;
  std::string s = "1";
  std::uint64_t samples = 100'000;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
};

constexpr double kSigmaGate = 4.0;
constexpr double kKsAlpha = 0.01;

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::ParseError, std::string(kSeedEnvVar) + " must be an unsigned integer, got '" +
                                             std::string(text) + "'");
    }
    return v;
  }
  return 42;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const auto format = parse_format(args.format);
  if (!format) throw Error(ErrorCode::ParseError, "unknown format '" + args.format + "'");
  if (args.samples < kMinEstimatorSamples) {
    throw Error(ErrorCode::InsufficientSamples, std::to_string(args.samples) + " samples requested, need at least " +
                                                    std::to_string(kMinEstimatorSamples));
  }
  const std::uint64_t seed = args.seed ? *args.seed : default_seed();
  const auto n_values = parse_index_list(args.n);
  for (unsigned n : n_values) {
    if (n == 0) throw Error(ErrorCode::NRequired, "simulation needs n >= 1");
  }

  Table table;
  std::vector<std::vector<Cell>> rows(n_values.size());
  std::vector<char> ok(n_values.size(), 0);
  std::map<std::string, std::string> parameters = {{"suite", args.suite},
                                                   {"n", join(n_values)},
                                                   {"samples", std::to_string(args.samples)},
                                                   {"format", args.format}};

  if (args.suite == "lemma1") {
    table.columns = {"suite", "n", "samples", "max_mean", "sum_mean", "expected_mean", "ks_statistic", "p_value",
                     "passed"};
    parallel_for(n_values.size(), [&](std::size_t i) {
      const unsigned n = n_values[i];
      RandomStream max_rng({seed, 2 * i});
      RandomStream sum_rng({seed, 2 * i + 1});
      std::vector<double> xs(args.samples);
      std::vector<double> ys(args.samples);
      for (auto& x : xs) x = sample_max_exp(n, max_rng);
      for (auto& y : ys) y = sample_sum_exp(n, sum_rng);
      const KsResult ks = ks_two_sample(xs, ys);
      Rational harmonic;
      for (unsigned j = 1; j <= n; ++j) harmonic += Rational(static_cast<long>(j)).reciprocal();
      const bool pass = ks.p_value > kKsAlpha;
      rows[i] = {Cell::string("lemma1"), Cell::integer_value(n),
                 Cell::integer_value(static_cast<std::int64_t>(args.samples)),
                 Cell::real_value(sample_moments(xs).mean), Cell::real_value(sample_moments(ys).mean),
                 Cell::real_value(harmonic.to_double()), Cell::real_value(ks.statistic),
                 Cell::real_value(ks.p_value), Cell::boolean_value(pass)};
      ok[i] = pass;
    });
  } else if (args.suite == "tail" || args.suite == "laplace") {
    const bool tail = args.suite == "tail";
    const Rational s = parse_exact_list(args.s).at(0);
    if (s.sign() <= 0) throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + s.to_string());
    if (tail && args.m == 0) throw Error(ErrorCode::MRequired, "m must be >= 1");
    parameters["s"] = s.to_string();
    if (tail) parameters["m"] = std::to_string(args.m);
    table.columns = {"suite", "m", "s", "n", "samples", "estimate", "std_error", "exact", "exact_decimal", "z_score",
                     "passed"};
    parallel_for(n_values.size(), [&](std::size_t i) {
      const unsigned n = n_values[i];
      const RngConfig cfg{seed, i};
      const MonteCarloEstimate e =
          tail ? estimate_tail_prob(args.m, s, n, args.samples, cfg) : empirical_laplace(s, n, args.samples, cfg);
      const double z = z_score(e);
      const bool pass = z <= kSigmaGate;
      rows[i] = {Cell::string(args.suite), tail ? Cell::integer_value(args.m) : Cell::null(),
                 Cell::string(s.to_fraction_string()), Cell::integer_value(n),
                 Cell::integer_value(static_cast<std::int64_t>(e.samples)), Cell::real_value(e.estimate),
                 Cell::real_value(e.std_error), Cell::string(e.exact_reference->to_fraction_string()),
                 Cell::real_value(e.exact_reference->to_double()), Cell::real_value(z), Cell::boolean_value(pass)};
      ok[i] = pass;
    });
  } else {
    throw Error(ErrorCode::ParseError, "unknown suite '" + args.suite + "' (expected lemma1, tail or laplace)");
  }

  table.rows = std::move(rows);
  const bool passed = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  const RunManifest manifest = make_manifest("simulate", std::move(parameters), seed);
  Emitter{args.output, out}.emit(render_report(manifest, table, passed, *format));
  return passed ? kExitPass : kExitFailure;
}

}  // namespace

std::string_view tool_version() noexcept { return BINID_VERSION; }

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = json{{"command", m.command},
           {"parameters", m.parameters},
           {"seed", m.seed ? json(*m.seed) : json(nullptr)},
           {"tool_version", m.tool_version},
           {"timestamp", m.timestamp}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  j.at("command").get_to(m.command);
  j.at("parameters").get_to(m.parameters);
  const auto& seed = j.at("seed");
  m.seed = seed.is_null() ? std::nullopt : std::optional<std::uint64_t>(seed.get<std::uint64_t>());
  j.at("tool_version").get_to(m.tool_version);
  j.at("timestamp").get_to(m.timestamp);
}

std::string run_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
    long long v = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size()) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<ReportFormat> parse_format(std::string_view name) noexcept {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

std::vector<unsigned> parse_index_list(std::string_view text) {
  std::vector<unsigned> out;
  for (std::string_view part : split(text, ',')) {
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      const unsigned lo = parse_unsigned(part.substr(0, dots));
      const unsigned hi = parse_unsigned(part.substr(dots + 2));
      if (lo > hi) throw Error(ErrorCode::ParseError, "empty range '" + std::string(part) + "'");
      for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_unsigned(part));
    }
  }
  return out;
}

std::vector<Rational> parse_exact_list(std::string_view text) {
  std::vector<Rational> out;
  for (std::string_view part : split(text, ',')) out.push_back(Rational::parse(part));
  return out;
}

std::vector<Rational> parse_decimal_list(std::string_view text) {
  std::vector<Rational> out;
  for (std::string_view part : split(text, ',')) out.push_back(parse_decimal_rational(part));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Cell Cell::string(std::string s) {
  Cell c;
  c.kind = Kind::String;
  c.text = std::move(s);
  return c;
}

Cell Cell::integer_value(std::int64_t v) {
  Cell c;
  c.kind = Kind::Integer;
  c.integer = v;
  return c;
}

Cell Cell::real_value(double v) {
  Cell c;
  c.kind = Kind::Real;
  c.real = v;
  return c;
}

Cell Cell::boolean_value(bool b) {
  Cell c;
  c.kind = Kind::Boolean;
  c.boolean = b;
  return c;
}

Cell Cell::null() { return Cell{}; }

std::string Cell::to_text() const {
  switch (kind) {
    case Kind::String: return text;
    case Kind::Integer: return std::to_string(integer);
    case Kind::Real: return format_double(real);
    case Kind::Boolean: return boolean ? "true" : "false";
    case Kind::Null: return "";
  }
  return "";
}

constexpr const char* kRealMarker = "@@real@@";

std::string render_report(const RunManifest& manifest, const Table& table, bool passed, ReportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::Json: {
      json rows = json::array();
      for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          const Cell& cell = row[c];
          json& slot = obj[table.columns[c]];
          switch (cell.kind) {
            case Cell::Kind::String: slot = cell.text; break;
            case Cell::Kind::Integer: slot = cell.integer; break;
            case Cell::Kind::Real:
              // Finite reals go through a placeholder so the number is printed as %.17g.
              slot = std::isfinite(cell.real) ? json(kRealMarker + format_double(cell.real) + kRealMarker)
                                              : json(format_double(cell.real));
              break;
            case Cell::Kind::Boolean: slot = cell.boolean; break;
            case Cell::Kind::Null: slot = nullptr; break;
          }
        }
        rows.push_back(std::move(obj));
      }
      const json doc = {{"manifest", manifest}, {"passed", passed}, {"rows", std::move(rows)}};
      static const std::regex real_placeholder("\"" + std::string(kRealMarker) + "([^\"]*)" + kRealMarker + "\"");
      os << std::regex_replace(doc.dump(2), real_placeholder, "$1") << '\n';
      break;
    }
    case ReportFormat::Csv: {
      os << "# manifest: " << json(manifest).dump() << '\n';
      for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
      os << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(row[c].to_text());
        os << '\n';
      }
      break;
    }
    case ReportFormat::Markdown: {
      os << "## binid " << manifest.command << "\n\n";
      os << "- tool_version: " << manifest.tool_version << '\n';
      os << "- timestamp: " << manifest.timestamp << '\n';
      if (manifest.seed) os << "- seed: " << *manifest.seed << '\n';
      for (const auto& [k, v] : manifest.parameters) os << "- " << k << ": " << v << '\n';
      os << "- passed: " << (passed ? "true" : "false") << "\n\n";
      os << '|';
      for (const auto& col : table.columns) os << ' ' << col << " |";
      os << "\n|";
      for (std::size_t c = 0; c < table.columns.size(); ++c) os << " --- |";
      os << '\n';
      for (const auto& row : table.rows) {
        os << '|';
        for (const auto& cell : row) os << ' ' << cell.to_text() << " |";
        os << '\n';
      }
      break;
    }
  }
  return os.str();
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and statistical verification of exponential-order-statistic binomial identities", "binid"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check identities exactly on a parameter grid");
  verify_cmd->add_option("--identity", verify_args.identity, "Identity name or 'all'");
  verify_cmd->add_option("--s", verify_args.s, "Comma-separated positive rationals (p/q or integers)");
  verify_cmd->add_option("--n", verify_args.n, "n value or contiguous range a..b");
  verify_cmd->add_option("--m", verify_args.m, "m value or contiguous range a..b");
  verify_cmd->add_option("--format", verify_args.format, "json, csv or markdown");
  verify_cmd->add_option("--output", verify_args.output, "Write the report to this file");
  verify_cmd->add_option("--threads", verify_args.threads, "Worker threads (0 = all cores)");

  QuadratureArgs quad_args;
  auto* quad_cmd = app.add_subcommand("quadrature", "Cross-check both Laplace-transform integrals");
  quad_cmd->add_option("--s", quad_args.s, "Comma-separated positive values (decimals allowed)");
  quad_cmd->add_option("--n", quad_args.n, "n values: list and/or ranges a..b");
  quad_cmd->add_option("--tol", quad_args.tol, "Absolute quadrature tolerance (>= 1e-13)");
  quad_cmd->add_option("--format", quad_args.format, "json, csv or markdown");
  quad_cmd->add_option("--output", quad_args.output, "Write the report to this file");

  SimulateArgs sim_args;
  std::uint64_t seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a seeded Monte Carlo suite");
  sim_cmd->add_option("--suite", sim_args.suite, "lemma1, tail or laplace")->required();
  sim_cmd->add_option("--n", sim_args.n, "n values: list and/or ranges a..b");
  sim_cmd->add_option("--m", sim_args.m, "Gamma shape for the tail suite");
  sim_cmd->add_option("--s", sim_args.s, "Positive rational rate s");
  sim_cmd->add_option("--samples", sim_args.samples, "Draws per estimate (>= 10000)");
  auto* seed_opt = sim_cmd->add_option("--seed", seed, std::string("Master seed (default: $") + kSeedEnvVar + " or 42)");
  sim_cmd->add_option("--format", sim_args.format, "json, csv or markdown");
  sim_cmd->add_option("--output", sim_args.output, "Write the report to this file");

  std::vector<const char*> argv;
  argv.push_back("binid");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify_args, out);
    if (*quad_cmd) return cmd_quadrature(quad_args, out);
    if (*seed_opt) sim_args.seed = seed;
    return cmd_simulate(sim_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace binid::cli
