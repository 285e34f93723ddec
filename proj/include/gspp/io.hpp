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

// Text formats for instances and solutions.
//
// Instance ("gspp 1"), one record per line, '#' starts a comment line:
//
//   gspp 1
//   name <rest of line>
//   application <word>
//   decimals <d>
//   tasks <n>
//   dims <k> <name>:<size> ...
//   resources <count>
//   capacities <m> <capacity of resource 0> ... <capacity of resource m-1>
//   assignments <count>
//   a <id> <task> <cost> <runs> <lo>[-<hi>] ... <caps> <resource>:<amount> ...
//   end
//
// Footprints are written as sorted runs of consecutive resource ids. Costs
// use the fixed-point notation of format_cost. Writing an instance that was
// read gives the same bytes.

#ifndef GSPP_IO_HPP
#define GSPP_IO_HPP

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gspp/cost.hpp"
#include "gspp/instance.hpp"
#include "gspp/solution.hpp"

namespace gspp {

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split at the first space; false at EOF.
  bool next(std::string& key, std::string& rest) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto sp = line.find(' ');
      key = line.substr(0, sp);
      rest = sp == std::string::npos ? "" : line.substr(sp + 1);
      return true;
    }
    return false;
  }

  void expect(std::string_view want, std::string& rest) {
    std::string key;
    if (!next(key, rest)) fail("unexpected end of file, expected '" + std::string(want) + "'");
    if (key != want) fail("expected '" + std::string(want) + "', found '" + key + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_no_) + ": " + what);
  }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

class Tokens {
 public:
  Tokens(std::string_view text, const LineReader& reader)
      : text_(text), reader_(reader) {}

  std::string_view word() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    if (pos_ >= text_.size()) reader_.fail("missing field");
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ') ++pos_;
    return text_.substr(start, pos_ - start);
  }

  template <class Int>
  Int integer() {
    return to_int<Int>(word());
  }

  template <class Int>
  Int to_int(std::string_view w) const {
    Int v{};
    const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size()) {
      reader_.fail("bad integer '" + std::string(w) + "'");
    }
    return v;
  }

  void done() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    if (pos_ != text_.size()) reader_.fail("trailing fields");
  }

 private:
  std::string_view text_;
  const LineReader& reader_;
  std::size_t pos_ = 0;
};

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace detail

inline void write_instance(std::ostream& os, const InstanceData& d) {
  if (d.name.find('\n') != std::string::npos ||
      d.application.find_first_of(" \n") != std::string::npos) {
    throw ContractError("instance name or application not writable");
  }
  os << "gspp 1\n";
  os << "name " << d.name << '\n';
  os << "application " << d.application << '\n';
  os << "decimals " << d.decimals << '\n';
  os << "tasks " << d.task_count << '\n';
  os << "dims " << d.dims.size();
  for (const auto& dim : d.dims) os << ' ' << dim.name << ':' << dim.size;
  os << '\n';
  os << "resources " << d.resource_count << '\n';
  os << "capacities " << d.capacities.size();
  for (const auto& c : d.capacities) os << ' ' << c.capacity;
  os << '\n';
  os << "assignments " << d.assignments.size() << '\n';
  for (const Assignment& a : d.assignments) {
    std::vector<ResourceId> fp = a.footprint;
    std::sort(fp.begin(), fp.end());
    fp.erase(std::unique(fp.begin(), fp.end()), fp.end());
    const auto runs = detail::to_runs(fp);
    os << "a " << a.id << ' ' << a.task << ' ' << format_cost(a.cost, d.decimals)
       << ' ' << runs.size();
    for (const auto& r : runs) {
      os << ' ' << r.lo;
      if (r.hi - 1 != r.lo) os << '-' << (r.hi - 1);
    }
    os << ' ' << a.cap_usage.size();
    for (const CapUse& u : a.cap_usage) os << ' ' << u.resource << ':' << u.amount;
    os << '\n';
  }
  os << "end\n";
}

inline void write_instance(std::ostream& os, const Instance& inst) {
  write_instance(os, inst.data());
}

inline InstanceData read_instance_data(std::istream& in) {
  detail::LineReader reader(in);
  std::string rest;
  reader.expect("gspp", rest);
  if (rest != "1") reader.fail("unsupported format version '" + rest + "'");
  InstanceData d;
  reader.expect("name", rest);
  d.name = rest;
  reader.expect("application", rest);
  d.application = rest;
  auto scalar = [&](std::string_view key, auto& field) {
    reader.expect(key, rest);
    detail::Tokens t(rest, reader);
    field = t.integer<std::remove_reference_t<decltype(field)>>();
    t.done();
  };
  scalar("decimals", d.decimals);
  if (d.decimals < 0 || d.decimals > kMaxDecimals) reader.fail("bad decimals");
  scalar("tasks", d.task_count);
  {
    reader.expect("dims", rest);
    detail::Tokens t(rest, reader);
    const auto k = t.integer<std::size_t>();
    for (std::size_t i = 0; i < k; ++i) {
      const std::string_view w = t.word();
      const auto colon = w.rfind(':');
      if (colon == std::string_view::npos) reader.fail("bad dimension '" + std::string(w) + "'");
      d.dims.push_back({std::string(w.substr(0, colon)),
                        t.to_int<std::uint32_t>(w.substr(colon + 1))});
    }
    t.done();
  }
  scalar("resources", d.resource_count);
  {
    reader.expect("capacities", rest);
    detail::Tokens t(rest, reader);
    const auto m = t.integer<std::size_t>();
    for (std::size_t c = 0; c < m; ++c) {
      d.capacities.push_back({static_cast<ResourceId>(c), t.integer<std::int64_t>()});
    }
    t.done();
  }
  std::size_t count = 0;
  scalar("assignments", count);
  d.assignments.reserve(std::min<std::size_t>(count, 1u << 20));
  for (std::size_t i = 0; i < count; ++i) {
    reader.expect("a", rest);
    detail::Tokens t(rest, reader);
    Assignment a;
    a.id = t.integer<AssignmentId>();
    a.task = t.integer<TaskId>();
    try {
      a.cost = parse_cost(t.word(), d.decimals);
    } catch (const ParseError& e) {
      reader.fail(e.what());
    }
    const auto runs = t.integer<std::size_t>();
    for (std::size_t r = 0; r < runs; ++r) {
      const std::string_view w = t.word();
      const auto dash = w.find('-');
      const auto lo = t.to_int<ResourceId>(w.substr(0, dash));
      const auto hi = dash == std::string_view::npos
                          ? lo
                          : t.to_int<ResourceId>(w.substr(dash + 1));
      if (hi < lo) reader.fail("descending run '" + std::string(w) + "'");
      for (ResourceId x = lo;; ++x) {
        a.footprint.push_back(x);
        if (x == hi) break;
      }
    }
    const auto caps = t.integer<std::size_t>();
    for (std::size_t c = 0; c < caps; ++c) {
      const std::string_view w = t.word();
      const auto colon = w.find(':');
      if (colon == std::string_view::npos) reader.fail("bad capacity use '" + std::string(w) + "'");
      a.cap_usage.push_back({t.to_int<ResourceId>(w.substr(0, colon)),
                             t.to_int<std::int64_t>(w.substr(colon + 1))});
    }
    t.done();
    d.assignments.push_back(std::move(a));
  }
  reader.expect("end", rest);
  return d;
}

inline Instance read_instance(std::istream& in) {
  return Instance(read_instance_data(in));
}

inline Instance read_instance_file(const std::string& path) {
  auto in = detail::open_input(path);
  try {
    return read_instance(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_instance_file(const std::string& path, const Instance& inst) {
  auto out = detail::open_output(path);
  write_instance(out, inst);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

/// Solution file:
///
///   gspp-solution 1
///   instance <name>
///   status <word>
///   decimals <d>
///   feasible <0|1>
///   cost <cost>
///   choices <n>
///   c <task> <assignment id>
///   end
struct SolutionFile {
  std::string instance;
  std::string status;
  int decimals = 0;
  Solution solution;

  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

inline void write_solution(std::ostream& os, const SolutionFile& f) {
  os << "gspp-solution 1\n";
  os << "instance " << f.instance << '\n';
  os << "status " << f.status << '\n';
  os << "decimals " << f.decimals << '\n';
  os << "feasible " << (f.solution.feasible ? 1 : 0) << '\n';
  os << "cost " << format_cost(f.solution.cost, f.decimals) << '\n';
  os << "choices " << f.solution.chosen.size() << '\n';
  for (std::size_t t = 0; t < f.solution.chosen.size(); ++t) {
    os << "c " << t << ' ' << f.solution.chosen[t] << '\n';
  }
  os << "end\n";
}

inline SolutionFile read_solution(std::istream& in) {
  detail::LineReader reader(in);
  std::string rest;
  reader.expect("gspp-solution", rest);
  if (rest != "1") reader.fail("unsupported format version '" + rest + "'");
  SolutionFile f;
  reader.expect("instance", rest);
  f.instance = rest;
  reader.expect("status", rest);
  f.status = rest;
  auto integer = [&](std::string_view key, auto& field) {
    reader.expect(key, rest);
    detail::Tokens t(rest, reader);
    field = t.integer<std::remove_reference_t<decltype(field)>>();
    t.done();
  };
  integer("decimals", f.decimals);
  if (f.decimals < 0 || f.decimals > kMaxDecimals) reader.fail("bad decimals");
  int feasible = 0;
  integer("feasible", feasible);
  f.solution.feasible = feasible != 0;
  reader.expect("cost", rest);
  try {
    f.solution.cost = parse_cost(rest, f.decimals);
  } catch (const ParseError& e) {
    reader.fail(e.what());
  }
  std::size_t n = 0;
  integer("choices", n);
  f.solution.chosen.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    reader.expect("c", rest);
    detail::Tokens t(rest, reader);
    const auto task = t.integer<std::size_t>();
    if (task != i) reader.fail("choices must be listed by task");
    f.solution.chosen[i] = t.integer<AssignmentId>();
    t.done();
  }
  reader.expect("end", rest);
  return f;
}

inline void write_solution_file(const std::string& path, const SolutionFile& f) {
  auto out = detail::open_output(path);
  write_solution(out, f);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline SolutionFile read_solution_file(const std::string& path) {
  auto in = detail::open_input(path);
  return read_solution(in);
}

}  // namespace gspp

#endif  // GSPP_IO_HPP
