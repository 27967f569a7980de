#pragma once

// Suite reports and their json/csv/text serializations. Floats are written
// with %.15e and keys in sorted order so equal reports give equal bytes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperslice/error.hpp"

namespace hyperslice {

struct CheckRecord {
  std::string name;
  bool pass = false;
  double metric = 0.0;
  double tolerance = 0.0;
  double wall_ms = 0.0;
};

/// One row of a quadrature convergence study.
struct ConvergenceRow {
  std::size_t m = 0;
  std::size_t r = 0;
  std::size_t v = 0;
  double abs_error = 0.0;
  double wall_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::string algebra;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::vector<ConvergenceRow> convergence;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  void append(const SuiteReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    convergence.insert(convergence.end(), other.convergence.begin(), other.convergence.end());
  }
};

enum class ReportFormat { Json, Csv, Text };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "text") return ReportFormat::Text;
  throw Error(ErrorCode::InvalidConfig, "unknown report format '" + std::string(s) + "'");
}

struct EmitOptions {
  /// When false every wall_ms is written as 0 so reruns are byte-identical.
  bool timings = false;
};

namespace detail {

inline std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

/// JSON has no NaN or infinity; those become null.
inline std::string json_real(double v) { return std::isfinite(v) ? fmt_real(v) : "null"; }

inline double real_or_nan(const nlohmann::json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

inline std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace detail

inline void write_json(std::ostream& os, const SuiteReport& r, EmitOptions opt = {}) {
  using detail::json_real;
  using detail::quoted;
  auto ms = [&](double v) { return json_real(opt.timings ? v : 0.0); };
  os << "{\n  \"algebra\": " << quoted(r.algebra) << ",\n  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    os << (i ? ",\n" : "\n") << "    {\"metric\": " << json_real(c.metric) << ", \"name\": " << quoted(c.name)
       << ", \"pass\": " << (c.pass ? "true" : "false") << ", \"tolerance\": " << json_real(c.tolerance)
       << ", \"wall_ms\": " << ms(c.wall_ms) << "}";
  }
  os << (r.checks.empty() ? "],\n" : "\n  ],\n") << "  \"convergence\": [";
  for (std::size_t i = 0; i < r.convergence.size(); ++i) {
    const auto& row = r.convergence[i];
    os << (i ? ",\n" : "\n") << "    {\"M\": " << row.m << ", \"R\": " << row.r << ", \"V\": " << row.v
       << ", \"abs_error\": " << json_real(row.abs_error) << ", \"wall_ms\": " << ms(row.wall_ms) << "}";
  }
  os << (r.convergence.empty() ? "],\n" : "\n  ],\n") << "  \"pass\": " << (r.pass() ? "true" : "false")
     << ",\n  \"seed\": " << r.seed << ",\n  \"suite\": " << quoted(r.suite) << "\n}\n";
}

inline void write_csv(std::ostream& os, const SuiteReport& r, EmitOptions opt = {}) {
  os << "M,R,V,abs_error,wall_ms\n";
  for (const auto& row : r.convergence) {
    os << row.m << ',' << row.r << ',' << row.v << ',' << detail::fmt_real(row.abs_error) << ','
       << detail::fmt_real(opt.timings ? row.wall_ms : 0.0) << '\n';
  }
}

inline void write_text(std::ostream& os, const SuiteReport& r, EmitOptions opt = {}) {
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  char line[512];
  std::snprintf(line, sizeof line, "suite %s (%s), seed %llu\n", r.suite.c_str(), r.algebra.c_str(),
                static_cast<unsigned long long>(r.seed));
  os << line;
  std::snprintf(line, sizeof line, "%-*s  %-4s  %-22s  %-22s%s\n", static_cast<int>(width), "check", "ok", "metric",
                "tolerance", opt.timings ? "  wall_ms" : "");
  os << line;
  for (const auto& c : r.checks) {
    std::snprintf(line, sizeof line, "%-*s  %-4s  %-22s  %-22s", static_cast<int>(width), c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", detail::fmt_real(c.metric).c_str(), detail::fmt_real(c.tolerance).c_str());
    os << line;
    if (opt.timings) os << "  " << detail::fmt_real(c.wall_ms);
    os << '\n';
  }
  std::size_t failed = 0;
  for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
  os << (r.pass() ? "PASS" : "FAIL") << ": " << (r.checks.size() - failed) << "/" << r.checks.size()
     << " checks passed\n";
}

inline void write_report(std::ostream& os, const SuiteReport& r, ReportFormat format, EmitOptions opt = {}) {
  switch (format) {
    case ReportFormat::Json: write_json(os, r, opt); break;
    case ReportFormat::Csv: write_csv(os, r, opt); break;
    case ReportFormat::Text: write_text(os, r, opt); break;
  }
}

/// Writes to `path`, or to stdout when the path is empty or "-".
inline void emit_report(const SuiteReport& r, ReportFormat format, const std::string& path, EmitOptions opt = {}) {
  if (path.empty() || path == "-") {
    write_report(std::cout, r, format, opt);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  write_report(out, r, format, opt);
  if (!out) throw Error(ErrorCode::Io, "write to " + path + " failed");
}

inline SuiteReport parse_report_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    r.algebra = j.at("algebra").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), detail::real_or_nan(c.at("metric")),
                          c.at("tolerance").get<double>(), c.at("wall_ms").get<double>()});
    }
    for (const auto& row : j.at("convergence")) {
      r.convergence.push_back({row.at("M").get<std::size_t>(), row.at("R").get<std::size_t>(),
                               row.at("V").get<std::size_t>(), detail::real_or_nan(row.at("abs_error")),
                               row.at("wall_ms").get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace hyperslice
