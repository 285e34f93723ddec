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

// Matching lower bound for crew recovery.
//
// Each driver may take at most one of its duties; every task must be covered
// by exactly one chosen duty. The bound matches tasks in pairs. Pair (i, j)
// is served either by one duty holding both, or by two duties of different
// drivers, one holding i but not j and the other j but not i.
//
// Parameter file (tasks are 0-based):
//
//   drivers <K>
//   tasks <N>
//   decimals <d>                       optional, default 0
//   duty <driver> <cost> <t,t,...>     one line per duty

#ifndef GSPP_APPS_CREW_HPP
#define GSPP_APPS_CREW_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gspp/apps/params.hpp"
#include "gspp/cost.hpp"
#include "gspp/matching.hpp"

namespace gspp::apps {

struct Duty {
  std::vector<int> tasks;  // sorted, distinct
  Cost cost = 0;
  friend bool operator==(const Duty&, const Duty&) = default;
};

struct CrewInstance {
  int drivers = 0;
  int tasks = 0;
  int decimals = 0;
  std::vector<std::vector<Duty>> duties;  // duties[k] belongs to driver k

  void validate() const {
    if (drivers < 1) throw ContractError("crew: at least one driver is required");
    if (tasks < 1) throw ContractError("crew: at least one task is required");
    if (decimals < 0 || decimals > kMaxDecimals) {
      throw ContractError("crew: decimals out of range");
    }
    if (duties.size() != static_cast<std::size_t>(drivers)) {
      throw ContractError("crew: duty lists do not match the driver count");
    }
    for (std::size_t k = 0; k < duties.size(); ++k) {
      for (const Duty& p : duties[k]) {
        const std::string who = "crew: duty of driver " + std::to_string(k);
        if (p.tasks.empty()) throw ContractError(who + " covers no task");
        if (p.cost < 0 || p.cost > kMaxFiniteCost) {
          throw ContractError(who + " has a cost out of range");
        }
        for (std::size_t i = 0; i < p.tasks.size(); ++i) {
          if (p.tasks[i] < 0 || p.tasks[i] >= tasks) {
            throw ContractError(who + " names an unknown task");
          }
          if (i > 0 && p.tasks[i] <= p.tasks[i - 1]) {
            throw ContractError(who + " must list tasks sorted and distinct");
          }
        }
      }
    }
  }

  friend bool operator==(const CrewInstance&, const CrewInstance&) = default;
};

/// How an edge is charged for the duties that serve it.
enum class CrewEdgeRule {
  kCostShared,  // a duty charges cost * |duty ∩ pair| / |duty|
  kFullCost,    // a duty charges its whole cost on every edge it serves
};

inline std::string_view to_string(CrewEdgeRule r) {
  return r == CrewEdgeRule::kCostShared ? "shared" : "full";
}

inline CrewEdgeRule parse_crew_edge_rule(std::string_view s) {
  if (s == "shared") return CrewEdgeRule::kCostShared;
  if (s == "full") return CrewEdgeRule::kFullCost;
  throw ContractError("unknown crew edge rule '" + std::string(s) + "'");
}

/// Optional application rule on two-duty covers: returns false when duty a
/// of driver ka and duty b of driver kb cannot both be worked. Rejecting
/// covers can only raise edge weights, so any valid rule keeps the bound.
using CrewPairOracle =
    std::function<bool(int ka, const Duty& a, int kb, const Duty& b)>;

enum class CrewBoundStatus {
  kOk,
  kUncoveredTask,    // some task lies in no duty
  kUncoverablePair,  // some pair has neither kind of cover
};

inline std::string_view to_string(CrewBoundStatus s) {
  switch (s) {
    case CrewBoundStatus::kOk: return "ok";
    case CrewBoundStatus::kUncoveredTask: return "uncovered-task";
    case CrewBoundStatus::kUncoverablePair: return "uncoverable-pair";
  }
  return "unknown";
}

struct CrewBound {
  CrewBoundStatus status = CrewBoundStatus::kOk;
  Cost bound = 0;            // kInfinity unless status is kOk
  Cost scale = 1;            // edge weights are in units of 1 / scale
  Cost matching_weight = 0;  // scaled
  std::size_t edges = 0;
  std::pair<int, int> witness{-1, -1};  // offending task (and partner)
};

namespace detail {

/// Common multiple of the duty sizes, capped so that scaled weights stay in
/// range. Past the cap, weights are floored and the result stays a bound.
inline Cost crew_scale(const CrewInstance& ci) {
  constexpr Cost kCap = 1'000'000;
  Cost max_cost = 1;
  Cost l = 1;
  bool capped = false;
  for (const auto& list : ci.duties) {
    for (const Duty& p : list) {
      max_cost = std::max(max_cost, p.cost);
      if (!capped) {
        l = std::lcm(l, static_cast<Cost>(p.tasks.size()));
        capped = l > kCap;
      }
    }
  }
  const Cost cap = std::max<Cost>(1, std::min(kCap, kMaxFiniteCost / max_cost));
  return capped ? cap : std::min(l, cap);
}

inline Cost crew_share(const Duty& p, int covered, Cost scale,
                       CrewEdgeRule rule) {
  if (rule == CrewEdgeRule::kFullCost) return p.cost;
  const auto num = static_cast<__int128>(p.cost) * scale * covered;
  return static_cast<Cost>(num / static_cast<__int128>(p.tasks.size()));
}

inline bool holds(const Duty& p, int t) {
  return std::binary_search(p.tasks.begin(), p.tasks.end(), t);
}

/// Cheapest two-duty cover of (i, j) accepted by the oracle.
inline Cost oracle_split(const CrewInstance& ci, int i, int j, Cost scale,
                         CrewEdgeRule rule, const CrewPairOracle& oracle) {
  Cost best = kInfinity;
  for (int ka = 0; ka < ci.drivers; ++ka) {
    for (const Duty& a : ci.duties[ka]) {
      if (!holds(a, i) || holds(a, j)) continue;
      for (int kb = 0; kb < ci.drivers; ++kb) {
        if (kb == ka) continue;
        for (const Duty& b : ci.duties[kb]) {
          if (!holds(b, j) || holds(b, i) || !oracle(ka, a, kb, b)) continue;
          best = std::min(best, crew_share(a, 1, scale, rule) +
                                    crew_share(b, 1, scale, rule));
        }
      }
    }
  }
  return best;
}

}  // namespace detail

/// Matching bound on the crew optimum; kInfinity plus a status when the
/// cover structure already rules out every solution.
inline CrewBound crew_lb2(const CrewInstance& ci,
                          CrewEdgeRule rule = CrewEdgeRule::kCostShared,
                          const CrewPairOracle& oracle = {}) {
  ci.validate();
  CrewBound out;
  out.scale = rule == CrewEdgeRule::kCostShared ? detail::crew_scale(ci) : 1;
  const int n = ci.tasks;
  const Cost scale = out.scale;

  // Artificial-vertex weights: cheapest single-task charge per task.
  std::vector<Cost> solo(static_cast<std::size_t>(n), kInfinity);
  for (const auto& list : ci.duties) {
    for (const Duty& p : list) {
      const Cost c = detail::crew_share(p, 1, scale, rule);
      for (int t : p.tasks) solo[t] = std::min(solo[t], c);
    }
  }
  for (int t = 0; t < n; ++t) {
    if (is_infinite(solo[t])) {
      out.status = CrewBoundStatus::kUncoveredTask;
      out.bound = kInfinity;
      out.witness = {t, -1};
      return out;
    }
  }

  const bool odd = n % 2 == 1;
  WeightedGraph g(n + (odd ? 1 : 0));
  // Per driver: best charge holding only i, only j. Top two over drivers
  // give the cheapest split with distinct drivers.
  struct Top2 {
    Cost v1 = kInfinity, v2 = kInfinity;
    int k1 = -1;
    void push(Cost v, int k) {
      if (v < v1) {
        if (k != k1) v2 = v1;
        v1 = v;
        k1 = k;
      } else if (k != k1 && v < v2) {
        v2 = v;
      }
    }
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Cost best = kInfinity;
      Top2 only_i, only_j;
      for (int k = 0; k < ci.drivers; ++k) {
        Cost bi = kInfinity, bj = kInfinity;
        for (const Duty& p : ci.duties[k]) {
          const bool hi = detail::holds(p, i);
          const bool hj = detail::holds(p, j);
          if (hi && hj) {
            best = std::min(best, detail::crew_share(p, 2, scale, rule));
          } else if (hi) {
            bi = std::min(bi, detail::crew_share(p, 1, scale, rule));
          } else if (hj) {
            bj = std::min(bj, detail::crew_share(p, 1, scale, rule));
          }
        }
        if (!is_infinite(bi)) only_i.push(bi, k);
        if (!is_infinite(bj)) only_j.push(bj, k);
      }
      if (oracle) {
        best = std::min(best, detail::oracle_split(ci, i, j, scale, rule, oracle));
      } else if (!is_infinite(only_i.v1) && !is_infinite(only_j.v1)) {
        if (only_i.k1 != only_j.k1) {
          best = std::min(best, only_i.v1 + only_j.v1);
        } else {
          if (!is_infinite(only_i.v2)) best = std::min(best, only_i.v2 + only_j.v1);
          if (!is_infinite(only_j.v2)) best = std::min(best, only_i.v1 + only_j.v2);
        }
      }
      if (is_infinite(best)) {
        out.status = CrewBoundStatus::kUncoverablePair;
        out.bound = kInfinity;
        out.witness = {i, j};
        return out;
      }
      g.add_edge(i, j, best);
    }
    if (odd) g.add_edge(i, n, solo[i]);
  }
  out.edges = g.edges.size();
  MatchingSolver solver;
  out.matching_weight = solver.max_weight(g.n, g.edges);
  out.bound = (out.matching_weight + scale - 1) / scale;
  return out;
}

inline CrewInstance read_crew_instance(std::istream& in) {
  CrewInstance ci;
  bool have_k = false;
  bool have_n = false;
  struct Pending {
    const ParamLine* line;
    int driver;
  };
  const std::vector<ParamLine> lines = read_param_lines(in);
  std::vector<Pending> pending;
  for (const ParamLine& l : lines) {
    if (l.key == "drivers") {
      l.arity(1);
      ci.drivers = l.as_int<int>();
      have_k = true;
    } else if (l.key == "tasks") {
      l.arity(1);
      ci.tasks = l.as_int<int>();
      have_n = true;
    } else if (l.key == "decimals") {
      l.arity(1);
      ci.decimals = l.as_int<int>();
    } else if (l.key == "duty") {
      l.arity(3);
      pending.push_back({&l, l.as_int<int>(0)});
    } else {
      l.fail("unknown key");
    }
  }
  if (!have_k || !have_n) throw ParseError("drivers and tasks are required");
  if (ci.drivers < 1) throw ParseError("drivers must be positive");
  if (ci.decimals < 0 || ci.decimals > kMaxDecimals) {
    throw ParseError("decimals out of range");
  }
  ci.duties.resize(static_cast<std::size_t>(ci.drivers));
  // Costs are read after the header so that decimals may appear anywhere.
  for (const Pending& p : pending) {
    if (p.driver < 0 || p.driver >= ci.drivers) p.line->fail("unknown driver");
    Duty d;
    d.cost = parse_cost(p.line->values[1], ci.decimals);
    d.tasks = p.line->as_int_list<int>(2);
    std::sort(d.tasks.begin(), d.tasks.end());
    if (std::adjacent_find(d.tasks.begin(), d.tasks.end()) != d.tasks.end()) {
      p.line->fail("repeated task");
    }
    ci.duties[static_cast<std::size_t>(p.driver)].push_back(std::move(d));
  }
  try {
    ci.validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
  return ci;
}

inline void write_crew_instance(std::ostream& os, const CrewInstance& ci) {
  os << "drivers " << ci.drivers << '\n';
  os << "tasks " << ci.tasks << '\n';
  if (ci.decimals != 0) os << "decimals " << ci.decimals << '\n';
  for (std::size_t k = 0; k < ci.duties.size(); ++k) {
    for (const Duty& p : ci.duties[k]) {
      os << "duty " << k << ' ' << format_cost(p.cost, ci.decimals) << ' '
         << join_list(p.tasks) << '\n';
    }
  }
}

}  // namespace gspp::apps

#endif  // GSPP_APPS_CREW_HPP
