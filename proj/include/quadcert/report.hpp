#pragma once

// Report serialization: machine-readable JSON and CSV plus a human-readable
// table for BoundReports.
//
// JSON and CSV carry every double at 17 significant digits, enough for a
// bit-exact double round trip; the table rounds to 6 significant digits for
// readability.  All output is deterministic: stable key/column order, fixed
// formatting, LF line endings.  A bound of +infinity is serialized as the
// JSON string "inf" (and the bare cell `inf` in CSV) since JSON has no
// infinity literal.  Optional fields that are absent (`dominates` when the
// hypothesis failed, `ratio` when the bound is zero or infinite) serialize
// as JSON null and as empty CSV cells.
//
// One report is a JSON object
//
//   { "theorem": string, "params": object, "bound": number|"inf",
//     "actual_error": number,
//     "hypothesis": { "passed": bool, "grid_density": int,
//                     "slack_min": number, "counterexample": object|null },
//     "dominates": bool|null, "ratio": number|null }
//
// and a report set serializes as a JSON array of those objects.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "quadcert/bounds.hpp"

namespace quadcert {

namespace detail {

/// printf-%g-style shortest-of-fixed/scientific at the given number of
/// significant digits, via std::to_chars (locale-independent).
inline std::string format_general(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

inline std::string format_full(double v) { return format_general(v, 17); }

/// JSON value for a double: a plain number when finite, else the strings
/// "inf" / "-inf" / "nan".
inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "\"" + format_full(v) + "\"";
  return format_full(v);
}

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

/// One report as a JSON object.  `indent` is the indentation of the object
/// itself; members are indented two further spaces.
inline std::string to_json(const BoundReport& report, int indent = 0) {
  const std::string pad(indent, ' ');
  const std::string in1 = pad + "  ";
  const std::string in2 = pad + "    ";
  std::string out;
  out += pad + "{\n";
  out += in1 + "\"theorem\": \"" + std::string(to_string(report.theorem)) + "\",\n";

  out += in1 + "\"params\": {";
  {
    bool first = true;
    const auto field = [&](const char* key, const std::string& value) {
      out += first ? std::string("\n") : std::string(",\n");
      out += in2 + "\"" + key + "\": " + value;
      first = false;
    };
    if (report.params.h) field("h", "\"" + detail::json_escape(*report.params.h) + "\"");
    if (report.params.s) field("s", detail::json_number(*report.params.s));
    if (report.params.q) field("q", detail::json_number(*report.params.q));
    if (report.params.alpha) field("alpha", detail::json_number(*report.params.alpha));
    if (report.params.m) field("m", detail::json_number(*report.params.m));
    out += first ? "},\n" : "\n" + in1 + "},\n";
  }

  out += in1 + "\"bound\": " + detail::json_number(report.bound) + ",\n";
  out += in1 + "\"actual_error\": " + detail::json_number(report.actual_error) + ",\n";

  out += in1 + "\"hypothesis\": {\n";
  out += in2 + "\"passed\": " + (report.hypothesis.passed ? "true" : "false") + ",\n";
  out += in2 + "\"grid_density\": " + std::to_string(report.hypothesis.grid_density) + ",\n";
  out += in2 + "\"slack_min\": " + detail::json_number(report.hypothesis.slack_min) + ",\n";
  if (report.hypothesis.counterexample) {
    const Counterexample& ce = *report.hypothesis.counterexample;
    out += in2 + "\"counterexample\": {";
    out += "\"x\": " + detail::json_number(ce.x);
    out += ", \"y\": " + detail::json_number(ce.y);
    out += ", \"t\": " + detail::json_number(ce.t);
    out += ", \"lhs\": " + detail::json_number(ce.lhs);
    out += ", \"rhs\": " + detail::json_number(ce.rhs);
    out += "}\n";
  } else {
    out += in2 + "\"counterexample\": null\n";
  }
  out += in1 + "},\n";

  out += in1 + "\"dominates\": ";
  out += report.dominates ? (*report.dominates ? "true" : "false") : "null";
  out += ",\n";
  out += in1 + "\"ratio\": ";
  out += report.ratio ? detail::json_number(*report.ratio) : "null";
  out += "\n" + pad + "}";
  return out;
}

/// A report set as a JSON array, trailing newline included.
inline std::string to_json(const std::vector<BoundReport>& reports) {
  if (reports.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += to_json(reports[i], 2);
    out += (i + 1 < reports.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline constexpr std::string_view kReportCsvHeader =
    "theorem,h,s,q,alpha,m,bound,actual_error,hypothesis_passed,"
    "hypothesis_slack_min,hypothesis_grid_density,counterexample_x,"
    "counterexample_y,counterexample_t,counterexample_lhs,counterexample_rhs,"
    "dominates,ratio";

/// Reports as CSV: fixed header row, one row per report, comma separators,
/// LF line endings.  Absent optionals are empty cells; doubles carry 17
/// significant digits.
inline std::string to_csv(const std::vector<BoundReport>& reports) {
  std::string out{kReportCsvHeader};
  out += '\n';
  for (const BoundReport& r : reports) {
    out += detail::csv_escape(to_string(r.theorem));
    out += ',';
    if (r.params.h) out += detail::csv_escape(*r.params.h);
    out += ',';
    if (r.params.s) out += detail::format_full(*r.params.s);
    out += ',';
    if (r.params.q) out += detail::format_full(*r.params.q);
    out += ',';
    if (r.params.alpha) out += detail::format_full(*r.params.alpha);
    out += ',';
    if (r.params.m) out += detail::format_full(*r.params.m);
    out += ',';
    out += detail::format_full(r.bound);
    out += ',';
    out += detail::format_full(r.actual_error);
    out += ',';
    out += r.hypothesis.passed ? "true" : "false";
    out += ',';
    out += detail::format_full(r.hypothesis.slack_min);
    out += ',';
    out += std::to_string(r.hypothesis.grid_density);
    out += ',';
    if (r.hypothesis.counterexample) {
      const Counterexample& ce = *r.hypothesis.counterexample;
      out += detail::format_full(ce.x);
      out += ',';
      out += detail::format_full(ce.y);
      out += ',';
      out += detail::format_full(ce.t);
      out += ',';
      out += detail::format_full(ce.lhs);
      out += ',';
      out += detail::format_full(ce.rhs);
    } else {
      out += ",,,,";
    }
    out += ',';
    if (r.dominates) out += *r.dominates ? "true" : "false";
    out += ',';
    if (r.ratio) out += detail::format_full(*r.ratio);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Table
// ---------------------------------------------------------------------------

namespace detail {

inline std::string table_params(const ReportedParams& p) {
  std::string out;
  const auto add = [&](const char* key, const std::string& value) {
    if (!out.empty()) out += ", ";
    out += key;
    out += '=';
    out += value;
  };
  if (p.h) add("h", *p.h);
  if (p.s) add("s", format_general(*p.s, 6));
  if (p.q) add("q", format_general(*p.q, 6));
  if (p.alpha) add("alpha", format_general(*p.alpha, 6));
  if (p.m) add("m", format_general(*p.m, 6));
  return out.empty() ? "-" : out;
}

}  // namespace detail

/// Reports as a fixed-width text table (6 significant digits), one row per
/// report, followed by one note line for each failed hypothesis naming the
/// worst violating triple.
inline std::string to_table(const std::vector<BoundReport>& reports) {
  const std::array<std::string, 7> header = {"theorem", "params",    "bound",
                                             "actual",  "hypothesis", "dominates",
                                             "ratio"};
  std::vector<std::array<std::string, 7>> rows;
  rows.reserve(reports.size());
  for (const BoundReport& r : reports) {
    rows.push_back({std::string(to_string(r.theorem)),
                    detail::table_params(r.params),
                    detail::format_general(r.bound, 6),
                    detail::format_general(r.actual_error, 6),
                    r.hypothesis.passed ? "pass" : "FAIL",
                    r.dominates ? (*r.dominates ? "yes" : "NO") : "-",
                    r.ratio ? detail::format_general(*r.ratio, 6) : "-"});
  }

  std::array<std::size_t, 7> width{};
  for (std::size_t c = 0; c < 7; ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < 7; ++c) width[c] = std::max(width[c], row[c].size());

  std::string out;
  const auto emit_row = [&](const std::array<std::string, 7>& row) {
    for (std::size_t c = 0; c < 7; ++c) {
      if (c) out += "  ";
      out += row[c];
      if (c + 1 < 7) out.append(width[c] - row[c].size(), ' ');
    }
    out += '\n';
  };
  emit_row(header);
  for (std::size_t c = 0; c < 7; ++c) {
    if (c) out += "  ";
    out.append(width[c], '-');
  }
  out += '\n';
  for (const auto& row : rows) emit_row(row);

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const BoundReport& r = reports[i];
    if (!r.hypothesis.passed && r.hypothesis.counterexample) {
      const Counterexample& ce = *r.hypothesis.counterexample;
      out += "! " + std::string(to_string(r.theorem)) +
             ": hypothesis falsified at x=" + detail::format_general(ce.x, 6) +
             ", y=" + detail::format_general(ce.y, 6) +
             ", t=" + detail::format_general(ce.t, 6) +
             " (lhs " + detail::format_general(ce.lhs, 6) + " > rhs " +
             detail::format_general(ce.rhs, 6) + ")\n";
    }
    if (std::isinf(r.bound)) {
      out += "! " + std::string(to_string(r.theorem)) +
             ": bound is not informative (weight moment diverges)\n";
    }
  }
  return out;
}

}  // namespace quadcert
