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

#ifndef GSPP_SOLUTION_HPP
#define GSPP_SOLUTION_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "gspp/instance.hpp"

namespace gspp {

/// One assignment id per task (chosen[task]).
struct Solution {
  std::vector<AssignmentId> chosen;
  Cost cost = 0;
  bool feasible = false;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct Evaluation {
  Cost cost = 0;
  bool feasible = false;
  std::vector<std::string> violations;
};

/// Objective value and full feasibility check (every packing row and every
/// capacity row, not just pairs).
inline Evaluation evaluate(const Instance& inst,
                           const std::vector<AssignmentId>& chosen) {
  if (chosen.size() != static_cast<std::size_t>(inst.task_count())) {
    throw ContractError("evaluate(): solution covers " +
                        std::to_string(chosen.size()) + " tasks, instance has " +
                        std::to_string(inst.task_count()));
  }
  std::vector<AssignmentIndex> idx(chosen.size());
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    idx[t] = inst.index_of(chosen[t]);
    if (inst.task_of(idx[t]) != static_cast<TaskId>(t)) {
      throw ContractError("evaluate(): assignment " +
                          std::to_string(chosen[t]) + " does not belong to task " +
                          std::to_string(t));
    }
  }

  Evaluation ev;
  std::vector<ResourceId> used;
  std::vector<std::int64_t> load(inst.capacities().size(), 0);
  for (AssignmentIndex i : idx) {
    const auto& a = inst.at(i);
    ev.cost += a.cost;
    used.insert(used.end(), a.footprint.begin(), a.footprint.end());
    for (const auto& u : a.cap_usage) load[u.resource] += u.amount;
  }
  std::sort(used.begin(), used.end());
  for (std::size_t i = 1; i < used.size(); ++i) {
    if (used[i] == used[i - 1] && (i < 2 || used[i - 2] != used[i])) {
      ev.violations.push_back("resource " + std::to_string(used[i]) +
                              " used more than once");
    }
  }
  for (std::size_t r = 0; r < load.size(); ++r) {
    if (load[r] > inst.capacity(static_cast<ResourceId>(r))) {
      ev.violations.push_back("capacitated resource " + std::to_string(r) +
                              " over capacity (" + std::to_string(load[r]) +
                              " > " +
                              std::to_string(inst.capacity(
                                  static_cast<ResourceId>(r))) +
                              ")");
    }
  }
  if (inst.has_extra_filter()) {
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = x + 1; y < idx.size(); ++y) {
        if (!inst.passes_filter(idx[x], idx[y])) {
          ev.violations.push_back("assignments " + std::to_string(chosen[x]) +
                                  " and " + std::to_string(chosen[y]) +
                                  " rejected by the pair filter");
        }
      }
    }
  }
  ev.feasible = ev.violations.empty();
  return ev;
}

inline Evaluation evaluate(const Instance& inst, const Solution& sol) {
  return evaluate(inst, sol.chosen);
}

/// Builds a Solution record for `chosen`, filling cost and feasibility.
inline Solution make_solution(const Instance& inst,
                              std::vector<AssignmentId> chosen) {
  const Evaluation ev = evaluate(inst, chosen);
  return Solution{std::move(chosen), ev.cost, ev.feasible};
}

struct BruteForceResult {
  bool feasible = false;
  Cost z = kInfinity;
  std::vector<Solution> all_optimal;  // sorted lexicographically by chosen
  std::uint64_t feasible_count = 0;
};

inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

/// Exhaustive optimum over the product of all option lists. Test oracle:
/// partial combinations that already break a packing row, a capacity row or
/// the pair filter are skipped, which is the same as evaluating every full
/// combination and discarding the infeasible ones.
inline BruteForceResult brute_force_optima(const Instance& inst) {
  inst.require_valid();
  std::uint64_t product = 1;
  for (TaskId t = 0; t < inst.task_count(); ++t) {
    product *= inst.options(t).size();
    if (product > kBruteForceGuard) {
      throw SizeError("brute_force_optima(): more than 10^7 combinations");
    }
  }

  BruteForceResult res;
  const auto n = static_cast<std::size_t>(inst.task_count());
  std::vector<int> occupied(inst.resource_count(), 0);
  std::vector<std::int64_t> load(inst.capacities().size(), 0);
  std::vector<AssignmentIndex> pick(n, -1);
  Cost cost = 0;

  auto fits = [&](std::size_t depth, AssignmentIndex cand) {
    const auto& a = inst.at(cand);
    for (ResourceId r : a.footprint) {
      if (occupied[r]) return false;
    }
    for (const auto& u : a.cap_usage) {
      if (load[u.resource] + u.amount > inst.capacity(u.resource)) return false;
    }
    for (std::size_t p = 0; p < depth; ++p) {
      if (!inst.passes_filter(pick[p], cand)) return false;
    }
    return true;
  };
  auto apply = [&](AssignmentIndex cand, int sign) {
    const auto& a = inst.at(cand);
    for (ResourceId r : a.footprint) occupied[r] += sign;
    for (const auto& u : a.cap_usage) load[u.resource] += sign * u.amount;
    cost += sign * a.cost;
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      ++res.feasible_count;
      if (cost < res.z) {
        res.z = cost;
        res.all_optimal.clear();
      }
      if (cost == res.z) {
        Solution s;
        s.chosen.resize(n);
        for (std::size_t t = 0; t < n; ++t) s.chosen[t] = inst.at(pick[t]).id;
        s.cost = cost;
        s.feasible = true;
        res.all_optimal.push_back(std::move(s));
      }
      return;
    }
    for (AssignmentIndex cand : inst.options(static_cast<TaskId>(depth))) {
      if (!fits(depth, cand)) continue;
      pick[depth] = cand;
      apply(cand, +1);
      self(self, depth + 1);
      apply(cand, -1);
    }
  };
  recurse(recurse, 0);

  res.feasible = res.feasible_count > 0;
  std::sort(res.all_optimal.begin(), res.all_optimal.end(),
            [](const Solution& a, const Solution& b) {
              return a.chosen < b.chosen;
            });
  return res;
}

}  // namespace gspp

#endif  // GSPP_SOLUTION_HPP
