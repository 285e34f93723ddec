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

#ifndef GSPP_COST_HPP
#define GSPP_COST_HPP

#include <charconv>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gspp {

/// Fixed-point cost. An instance declares how many decimal digits the
/// integer carries (`decimals`); all arithmetic stays in integers so bound
/// comparisons are exact.
using Cost = std::int64_t;

/// +infinity sentinel. A lower bound equal to kInfinity certifies
/// infeasibility (or, for a probe, that the fixed variable is unusable).
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 4;

/// Largest finite cost accepted anywhere. Keeps every sum of two finite
/// costs plus a matching of ~1e5 edges well inside int64.
inline constexpr Cost kMaxFiniteCost = Cost{1} << 40;

constexpr bool is_infinite(Cost c) { return c >= kInfinity; }

/// Saturating addition that treats kInfinity as absorbing.
constexpr Cost add_cost(Cost a, Cost b) {
  if (is_infinite(a) || is_infinite(b)) return kInfinity;
  return a + b;
}

/// Thrown when a caller violates an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when an exhaustive oracle is asked to work beyond its guard.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files or parameter text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDecimals = 9;

inline Cost pow10(int decimals) {
  Cost p = 1;
  for (int i = 0; i < decimals; ++i) p *= 10;
  return p;
}

/// Renders a scaled cost as an exact decimal ("12", "12.50", "inf").
inline std::string format_cost(Cost value, int decimals) {
  if (is_infinite(value)) return "inf";
  const bool negative = value < 0;
  std::uint64_t magnitude = negative ? static_cast<std::uint64_t>(-value)
                                     : static_cast<std::uint64_t>(value);
  std::string digits = std::to_string(magnitude);
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(),
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return negative ? "-" + digits : digits;
}

/// Inverse of format_cost. Accepts fewer fractional digits than `decimals`
/// but never more (that would lose precision).
inline Cost parse_cost(std::string_view text, int decimals) {
  if (text == "inf") return kInfinity;
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || frac.size() > static_cast<std::size_t>(decimals) ||
      (dot != std::string_view::npos && frac.empty())) {
    throw ParseError("bad cost literal '" + std::string(text) + "'");
  }
  Cost w = 0;
  auto [p1, e1] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
  if (e1 != std::errc{} || p1 != whole.data() + whole.size()) {
    throw ParseError("bad cost literal '" + std::string(text) + "'");
  }
  Cost f = 0;
  if (!frac.empty()) {
    auto [p2, e2] = std::from_chars(frac.data(), frac.data() + frac.size(), f);
    if (e2 != std::errc{} || p2 != frac.data() + frac.size()) {
      throw ParseError("bad cost literal '" + std::string(text) + "'");
    }
    f *= pow10(decimals - static_cast<int>(frac.size()));
  }
  if (w >= kInfinity / pow10(decimals)) {
    throw ParseError("cost literal '" + std::string(text) + "' out of range");
  }
  const Cost v = w * pow10(decimals) + f;
  return negative ? -v : v;
}

}  // namespace gspp

#endif  // GSPP_COST_HPP
