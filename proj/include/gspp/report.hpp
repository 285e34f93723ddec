// Copyright 2026 The GSPP Toolkit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSPP_REPORT_HPP
#define GSPP_REPORT_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gspp/cost.hpp"
#include "gspp/relaxation.hpp"

namespace gspp {

namespace csv {

inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote in CSV record");
  out.push_back(std::move(cur));
  return out;
}

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

inline double parse_double(std::string_view s) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("bad number '" + std::string(s) + "'");
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s) {
  Int v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "'");
  }
  return v;
}

inline std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += quote(fields[i]);
  }
  return out;
}

inline std::vector<std::string> expect_fields(std::string_view line,
                                              std::size_t n) {
  auto f = split(line);
  if (f.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " CSV fields, found " +
                     std::to_string(f.size()));
  }
  return f;
}

}  // namespace csv

inline constexpr std::string_view kBoundsHeader =
    "instance,tasks,assignments,decimals,trivial,lb1,lb2,e1_edges,e2_edges,"
    "lb1_seconds,lb2_seconds";

inline std::string to_csv_row(const BoundReport& r) {
  return csv::join({r.instance, std::to_string(r.tasks),
                    std::to_string(r.assignments), std::to_string(r.decimals),
                    format_cost(r.trivial, r.decimals),
                    format_cost(r.lb1, r.decimals),
                    format_cost(r.lb2, r.decimals), std::to_string(r.e1_edges),
                    std::to_string(r.e2_edges), csv::format_double(r.lb1_seconds),
                    csv::format_double(r.lb2_seconds)});
}

inline BoundReport parse_bounds_row(std::string_view line) {
  const auto f = csv::expect_fields(line, 11);
  BoundReport r;
  r.instance = f[0];
  r.tasks = csv::parse_int<int>(f[1]);
  r.assignments = csv::parse_int<std::size_t>(f[2]);
  r.decimals = csv::parse_int<int>(f[3]);
  r.trivial = parse_cost(f[4], r.decimals);
  r.lb1 = parse_cost(f[5], r.decimals);
  r.lb2 = parse_cost(f[6], r.decimals);
  r.e1_edges = csv::parse_int<std::size_t>(f[7]);
  r.e2_edges = csv::parse_int<std::size_t>(f[8]);
  r.lb1_seconds = csv::parse_double(f[9]);
  r.lb2_seconds = csv::parse_double(f[10]);
  return r;
}

/// One experiment row: bounds, the solution value found, and timings.
/// gap_basis is "opt" when z_ref holds a proven optimum, "lb2" when the gap
/// is measured against LB2, and "none" when no solution was found.
struct RunReport {
  std::string instance;
  std::uint64_t seed = 0;
  std::string mode;
  double sigma = 0;
  int mu = 0;
  int tasks = 0;
  std::size_t assignments = 0;
  int decimals = 0;
  Cost trivial = 0;
  Cost lb1 = 0;
  Cost lb2 = 0;
  Cost z = kInfinity;
  std::optional<Cost> z_ref;
  double gap_percent = 0;
  std::string gap_basis = "none";
  double selected_percent = 100;
  double rank_seconds = 0;
  double total_seconds = 0;
  std::uint64_t nodes = 0;
  std::string status;

  bool bounds_ordered() const { return trivial <= lb1 && lb1 <= lb2; }

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline constexpr std::string_view kRunHeader =
    "instance,seed,mode,sigma,mu,tasks,assignments,decimals,trivial,lb1,lb2,z,"
    "z_ref,gap_percent,gap_basis,selected_percent,rank_seconds,total_seconds,"
    "nodes,status";

inline std::string to_csv_row(const RunReport& r) {
  return csv::join(
      {r.instance, std::to_string(r.seed), r.mode, csv::format_double(r.sigma),
       std::to_string(r.mu), std::to_string(r.tasks),
       std::to_string(r.assignments), std::to_string(r.decimals),
       format_cost(r.trivial, r.decimals), format_cost(r.lb1, r.decimals),
       format_cost(r.lb2, r.decimals), format_cost(r.z, r.decimals),
       r.z_ref ? format_cost(*r.z_ref, r.decimals) : std::string(),
       csv::format_double(r.gap_percent), r.gap_basis,
       csv::format_double(r.selected_percent),
       csv::format_double(r.rank_seconds), csv::format_double(r.total_seconds),
       std::to_string(r.nodes), r.status});
}

inline RunReport parse_run_row(std::string_view line) {
  const auto f = csv::expect_fields(line, 20);
  RunReport r;
  r.instance = f[0];
  r.seed = csv::parse_int<std::uint64_t>(f[1]);
  r.mode = f[2];
  r.sigma = csv::parse_double(f[3]);
  r.mu = csv::parse_int<int>(f[4]);
  r.tasks = csv::parse_int<int>(f[5]);
  r.assignments = csv::parse_int<std::size_t>(f[6]);
  r.decimals = csv::parse_int<int>(f[7]);
  r.trivial = parse_cost(f[8], r.decimals);
  r.lb1 = parse_cost(f[9], r.decimals);
  r.lb2 = parse_cost(f[10], r.decimals);
  r.z = parse_cost(f[11], r.decimals);
  if (!f[12].empty()) r.z_ref = parse_cost(f[12], r.decimals);
  r.gap_percent = csv::parse_double(f[13]);
  r.gap_basis = f[14];
  r.selected_percent = csv::parse_double(f[15]);
  r.rank_seconds = csv::parse_double(f[16]);
  r.total_seconds = csv::parse_double(f[17]);
  r.nodes = csv::parse_int<std::uint64_t>(f[18]);
  r.status = f[19];
  return r;
}

}  // namespace gspp

#endif  // GSPP_REPORT_HPP
