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

#ifndef GSPP_APPS_PARAMS_HPP
#define GSPP_APPS_PARAMS_HPP

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gspp/cost.hpp"

namespace gspp::apps {

/// One "key value ..." line of a parameter file.
struct ParamLine {
  int line = 0;
  std::string key;
  std::vector<std::string> values;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line) + " (" + key + "): " + what);
  }

  void arity(std::size_t n) const {
    if (values.size() != n) {
      fail("expected " + std::to_string(n) + " value(s), found " +
           std::to_string(values.size()));
    }
  }

  template <class Int>
  Int as_int(std::size_t i = 0) const {
    if (i >= values.size()) fail("missing value");
    return parse<Int>(values[i]);
  }

  template <class Int>
  Int parse(std::string_view s) const {
    Int v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      fail("bad integer '" + std::string(s) + "'");
    }
    return v;
  }

  template <class Int>
  std::vector<Int> as_int_list(std::size_t i) const {
    if (i >= values.size()) fail("missing list");
    std::vector<Int> out;
    std::string_view s = values[i];
    while (!s.empty()) {
      const auto comma = s.find(',');
      out.push_back(parse<Int>(s.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      s.remove_prefix(comma + 1);
    }
    return out;
  }
};

/// Whitespace-separated key/value lines; '#' comments and blank lines are
/// skipped.
inline std::vector<ParamLine> read_param_lines(std::istream& in) {
  std::vector<ParamLine> out;
  std::string text;
  int n = 0;
  while (std::getline(in, text)) {
    ++n;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    std::istringstream words(text);
    ParamLine pl;
    pl.line = n;
    if (!(words >> pl.key)) continue;
    for (std::string w; words >> w;) pl.values.push_back(w);
    out.push_back(std::move(pl));
  }
  return out;
}

template <class T>
std::string join_list(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace gspp::apps

#endif  // GSPP_APPS_PARAMS_HPP
