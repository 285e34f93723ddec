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

#ifndef GSPP_MATHEURISTIC_HPP
#define GSPP_MATHEURISTIC_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "gspp/exact.hpp"
#include "gspp/instance.hpp"
#include "gspp/relaxation.hpp"
#include "gspp/solution.hpp"

namespace gspp {

struct RankingParams {
  double sigma = 0.1;
  int mu = 2000;
  double time_limit = 0;  // reduced solve, seconds; <= 0 is unlimited
  unsigned threads = 1;   // ranking workers

  void validate() const {
    if (!(sigma >= 0.0 && sigma <= 1.0)) {
      throw ContractError("sigma must lie in [0, 1]");
    }
    if (mu < 0) throw ContractError("mu must be nonnegative");
  }
};

enum class SelectionPhase { kSigma, kMu };

struct SelectionStep {
  SelectionPhase phase = SelectionPhase::kSigma;
  AssignmentId id = 0;
  TaskId task = 0;
  Cost delta = 0;
};

struct RankedPool {
  std::vector<Cost> delta;                // indexed like Instance::assignments
  std::vector<AssignmentIndex> selected;  // in selection order
  std::vector<SelectionStep> trace;

  /// Selected indices in ascending order, ready for Instance::restricted.
  std::vector<AssignmentIndex> selected_sorted() const {
    std::vector<AssignmentIndex> out = selected;
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Delta(k) = probe bound of every assignment, indexed like assignments().
inline std::vector<Cost> rank_variables(const Instance& inst,
                                        unsigned threads = 1) {
  const ProbeEngine engine(inst);
  return engine.probe_all(threads);
}

/// Ranked selection. Ties in the list are ordered by (delta, task, id);
/// the sigma phase moves whole tie groups, so the selected fraction can
/// overshoot sigma. Unusable variables (infinite delta) are never taken.
inline RankedPool select_variables(const Instance& inst,
                                   std::vector<Cost> delta,
                                   const RankingParams& params) {
  params.validate();
  if (delta.size() != inst.size()) {
    throw ContractError("delta does not cover every assignment");
  }
  RankedPool pool;
  pool.delta = std::move(delta);
  const auto& dl = pool.delta;

  std::vector<AssignmentIndex> list;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!is_infinite(dl[i])) list.push_back(static_cast<AssignmentIndex>(i));
  }
  std::sort(list.begin(), list.end(), [&](AssignmentIndex a, AssignmentIndex b) {
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    if (dl[ua] != dl[ub]) return dl[ua] < dl[ub];
    if (inst.task_of(a) != inst.task_of(b)) return inst.task_of(a) < inst.task_of(b);
    return inst.at(a).id < inst.at(b).id;
  });

  std::vector<int> per_task(static_cast<std::size_t>(inst.task_count()), 0);
  auto take = [&](AssignmentIndex a, SelectionPhase phase) {
    ++per_task[static_cast<std::size_t>(inst.task_of(a))];
    pool.selected.push_back(a);
    pool.trace.push_back({phase, inst.at(a).id, inst.task_of(a),
                          dl[static_cast<std::size_t>(a)]});
  };

  const double target = params.sigma * static_cast<double>(inst.size());
  std::size_t pos = 0;
  while (pos < list.size() &&
         static_cast<double>(pool.selected.size()) < target) {
    const Cost group = dl[static_cast<std::size_t>(list[pos])];
    while (pos < list.size() && dl[static_cast<std::size_t>(list[pos])] == group) {
      take(list[pos++], SelectionPhase::kSigma);
    }
  }

  // Remaining list entries per task, still in list order.
  std::vector<std::vector<AssignmentIndex>> rest(
      static_cast<std::size_t>(inst.task_count()));
  for (std::size_t p = pos; p < list.size(); ++p) {
    rest[static_cast<std::size_t>(inst.task_of(list[p]))].push_back(list[p]);
  }
  for (TaskId t = 0; t < inst.task_count(); ++t) {
    const auto ut = static_cast<std::size_t>(t);
    for (AssignmentIndex a : rest[ut]) {
      if (per_task[ut] >= params.mu) break;
      take(a, SelectionPhase::kMu);
    }
  }
  return pool;
}

/// Percentage gap of `upper` over `lower`; 0 when equal, infinity when the
/// lower value is 0 and the upper one is not.
inline double relative_gap(Cost upper, Cost lower) {
  if (is_infinite(upper) || is_infinite(lower)) {
    return std::numeric_limits<double>::infinity();
  }
  if (upper == lower) return 0.0;
  if (lower == 0) return std::numeric_limits<double>::infinity();
  return 100.0 * static_cast<double>(upper - lower) / static_cast<double>(lower);
}

enum class MatheuristicStatus {
  kOptimalOnSubset,   // reduced model solved to optimality
  kTimeLimit,         // incumbent found, reduced solve interrupted
  kReducedInfeasible, // reduced model has no feasible solution
  kNoSolution,        // time limit hit before any incumbent
};

inline std::string_view to_string(MatheuristicStatus s) {
  switch (s) {
    case MatheuristicStatus::kOptimalOnSubset: return "subset-optimal";
    case MatheuristicStatus::kTimeLimit: return "time-limit";
    case MatheuristicStatus::kReducedInfeasible: return "reduced-infeasible";
    case MatheuristicStatus::kNoSolution: return "no-solution";
  }
  return "unknown";
}

struct MatheuristicResult {
  MatheuristicStatus status = MatheuristicStatus::kReducedInfeasible;
  RankedPool pool;
  std::optional<Solution> solution;  // feasible for the original instance
  Cost ub = kInfinity;
  Cost lb2 = kInfinity;
  double gap_vs_lb2 = std::numeric_limits<double>::infinity();
  double selected_percent = 0;
  std::uint64_t nodes = 0;
  double rank_seconds = 0;
  double solve_seconds = 0;
  double total_seconds = 0;
};

/// Select a pool from precomputed ranks and solve the model restricted to
/// it. `rank_seconds` is reported as the ranking time; lets a parameter grid
/// share one ranking.
inline MatheuristicResult matheuristic_from_ranking(const Instance& inst,
                                                    std::vector<Cost> delta,
                                                    double rank_seconds,
                                                    const RankingParams& params,
                                                    BranchOptions branch = {}) {
  using Clock = std::chrono::steady_clock;
  auto since = [](Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  };
  params.validate();
  inst.require_valid();
  MatheuristicResult out;
  out.lb2 = lb2(inst);
  out.rank_seconds = rank_seconds;
  out.pool = select_variables(inst, std::move(delta), params);
  out.selected_percent =
      inst.size() == 0 ? 0.0
                       : 100.0 * static_cast<double>(out.pool.selected.size()) /
                             static_cast<double>(inst.size());

  const Instance sub = inst.restricted(out.pool.selected_sorted());
  const auto solve_start = Clock::now();
  if (!sub.valid()) {
    out.status = MatheuristicStatus::kReducedInfeasible;  // a task got nothing
  } else {
    branch.time_limit = params.time_limit;
    const SolveResult r = branch_and_bound(sub, branch);
    out.nodes = r.nodes;
    switch (r.status) {
      case SolveStatus::kOptimal:
        out.status = MatheuristicStatus::kOptimalOnSubset;
        break;
      case SolveStatus::kFeasibleTimeout:
        out.status = MatheuristicStatus::kTimeLimit;
        break;
      case SolveStatus::kInfeasible:
        out.status = MatheuristicStatus::kReducedInfeasible;
        break;
      case SolveStatus::kNoIncumbentTimeout:
        out.status = MatheuristicStatus::kNoSolution;
        break;
    }
    if (r.has_incumbent) {
      out.solution = make_solution(inst, r.incumbent.chosen);
      if (!out.solution->feasible) {
        throw ContractError("reduced solution is infeasible for the full model");
      }
      out.ub = out.solution->cost;
      out.gap_vs_lb2 = relative_gap(out.ub, out.lb2);
    }
  }
  out.solve_seconds = since(solve_start);
  out.total_seconds = rank_seconds + out.solve_seconds;
  return out;
}

/// Rank every variable, select a pool, and solve the model restricted to the
/// pool with branch and bound.
inline MatheuristicResult matheuristic_solve(const Instance& inst,
                                             const RankingParams& params,
                                             BranchOptions branch = {}) {
  params.validate();
  inst.require_valid();
  const auto start = std::chrono::steady_clock::now();
  std::vector<Cost> delta = rank_variables(inst, params.threads);
  const double rank_seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
  return matheuristic_from_ranking(inst, std::move(delta), rank_seconds, params,
                                   std::move(branch));
}

}  // namespace gspp

#endif  // GSPP_MATHEURISTIC_HPP
