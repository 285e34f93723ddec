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

#ifndef GSPP_REDUCTION_HPP
#define GSPP_REDUCTION_HPP

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gspp/instance.hpp"
#include "gspp/relaxation.hpp"

namespace gspp {

/// Raised when removal would leave some task without options. Either the
/// upper bound is not the cost of a feasible solution or the instance has
/// none.
class UpperBoundError : public std::runtime_error {
 public:
  UpperBoundError(TaskId task, const std::string& what)
      : std::runtime_error(what), task_(task) {}
  TaskId task() const { return task_; }

 private:
  TaskId task_;
};

struct RemovedVariable {
  AssignmentId id = 0;
  Cost probe = 0;
  friend bool operator==(const RemovedVariable&, const RemovedVariable&) = default;
};

struct ReductionOptions {
  bool fixpoint = false;  // repeat passes on the shrunk instance
  unsigned threads = 1;
};

struct ReductionStats {
  std::size_t before = 0;
  std::size_t after = 0;
  int passes = 0;
  double probe_seconds = 0;     // total over all passes
  double seconds_per_probe = 0;

  double percent_kept() const {
    return before == 0 ? 100.0
                       : 100.0 * static_cast<double>(after) /
                             static_cast<double>(before);
  }
};

struct ReductionResult {
  Instance reduced;
  std::vector<RemovedVariable> removed;  // ascending id
  Cost ub_used = kInfinity;
  ReductionStats stats;
};

namespace detail {

// One probe pass; returns kept indices and appends removals.
inline std::vector<AssignmentIndex> reduction_pass(
    const Instance& inst, Cost ub, unsigned threads,
    std::vector<RemovedVariable>& removed, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const ProbeEngine engine(inst);
  const std::vector<Cost> probes = engine.probe_all(threads);
  seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();

  std::vector<AssignmentIndex> keep;
  keep.reserve(inst.size());
  std::vector<int> survivors(static_cast<std::size_t>(inst.task_count()), 0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto idx = static_cast<AssignmentIndex>(i);
    if (probes[i] > ub) {
      removed.push_back({inst.at(idx).id, probes[i]});
    } else {
      keep.push_back(idx);
      ++survivors[static_cast<std::size_t>(inst.task_of(idx))];
    }
  }
  for (TaskId t = 0; t < inst.task_count(); ++t) {
    if (survivors[static_cast<std::size_t>(t)] == 0) {
      throw UpperBoundError(
          t, "reduction emptied the options of task " + std::to_string(t) +
                 ": upper bound " + format_cost(ub, inst.decimals()) +
                 " is incorrect or the instance is infeasible");
    }
  }
  return keep;
}

}  // namespace detail

/// Removes every assignment whose probe bound exceeds `ub`. Probes are all
/// taken against the input instance, so the result does not depend on
/// evaluation order. With `fixpoint`, passes repeat on the shrunk instance
/// until nothing more is removed.
inline ReductionResult reduce(const Instance& inst, Cost ub,
                              ReductionOptions options = {}) {
  inst.require_valid();
  ReductionResult result{inst, {}, ub, {}};
  result.stats.before = inst.size();
  std::size_t probes_run = 0;
  for (;;) {
    const Instance& current = result.reduced;
    probes_run += current.size();
    const std::size_t removed_before = result.removed.size();
    const auto keep = detail::reduction_pass(current, ub, options.threads,
                                             result.removed,
                                             result.stats.probe_seconds);
    ++result.stats.passes;
    const bool changed = result.removed.size() != removed_before;
    if (changed) result.reduced = current.restricted(keep);
    if (!options.fixpoint || !changed) break;
  }
  std::sort(result.removed.begin(), result.removed.end(),
            [](const RemovedVariable& a, const RemovedVariable& b) {
              return a.id < b.id;
            });
  result.stats.after = result.reduced.size();
  if (probes_run > 0) {
    result.stats.seconds_per_probe =
        result.stats.probe_seconds / static_cast<double>(probes_run);
  }
  return result;
}

}  // namespace gspp

#endif  // GSPP_REDUCTION_HPP
