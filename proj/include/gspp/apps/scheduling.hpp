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

// Parallel machine scheduling with step-deteriorating jobs as a GSPP.
//
// Slots are 1-based. A job started at slot s takes a slots when s <= d and
// a + b slots otherwise, occupies slots s .. s + p - 1 of its machine and
// costs its completion slot s + p - 1. Resource (machine, t) has id
// machine * h + (t - 1).
//
// Parameter file:
//
//   machines <m>
//   horizon <h>
//   job <a> <b> <d>       one line per job

#ifndef GSPP_APPS_SCHEDULING_HPP
#define GSPP_APPS_SCHEDULING_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "gspp/apps/params.hpp"
#include "gspp/instance.hpp"

namespace gspp::apps {

struct SchedJob {
  int base = 1;       // a_i
  int penalty = 0;    // b_i
  int deadline = 1;   // d_i, last start slot without deterioration
  friend bool operator==(const SchedJob&, const SchedJob&) = default;
};

struct SchedParams {
  int machines = 1;
  int horizon = 1;
  std::vector<SchedJob> jobs;

  void validate() const {
    if (machines < 1) throw ContractError("machines must be >= 1");
    if (horizon < 1) throw ContractError("horizon must be >= 1");
    if (jobs.empty()) throw ContractError("at least one job is required");
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& j = jobs[i];
      if (j.base < 1 || j.penalty < 0 || j.deadline < 1 || j.deadline > horizon) {
        throw ContractError("job " + std::to_string(i) +
                            " needs a >= 1, b >= 0 and 1 <= d <= horizon");
      }
    }
  }

  friend bool operator==(const SchedParams&, const SchedParams&) = default;
};

/// Processing time of a job started at slot s.
inline int processing_time(const SchedJob& j, int start) {
  return start <= j.deadline ? j.base : j.base + j.penalty;
}

/// One task per job, one assignment per (machine, start) that finishes
/// within the horizon. A job that fits nowhere leaves its task empty, which
/// the instance's validation reports.
inline Instance enumerate_scheduling(const SchedParams& p,
                                     std::string name = "sched") {
  p.validate();
  InstanceData d;
  d.name = std::move(name);
  d.application = "scheduling";
  d.task_count = static_cast<TaskId>(p.jobs.size());
  d.dims = {{"machine", static_cast<std::uint32_t>(p.machines)},
            {"slot", static_cast<std::uint32_t>(p.horizon)}};
  d.resource_count = static_cast<ResourceId>(p.machines) *
                     static_cast<ResourceId>(p.horizon);
  AssignmentId next = 0;
  for (std::size_t i = 0; i < p.jobs.size(); ++i) {
    for (int m = 0; m < p.machines; ++m) {
      for (int s = 1; s <= p.horizon; ++s) {
        const int finish = s + processing_time(p.jobs[i], s) - 1;
        if (finish > p.horizon) continue;
        Assignment a;
        a.id = next++;
        a.task = static_cast<TaskId>(i);
        a.cost = finish;
        for (int t = s; t <= finish; ++t) {
          a.footprint.push_back(static_cast<ResourceId>(m * p.horizon + t - 1));
        }
        d.assignments.push_back(std::move(a));
      }
    }
  }
  return Instance(std::move(d));
}

struct SchedGenConfig {
  int jobs = 4;
  int machines = 2;
  int horizon = 8;
  int max_base = 3;
  int max_penalty = 2;
};

/// Seeded random job data.
inline SchedParams random_sched_params(std::uint64_t seed,
                                       const SchedGenConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  SchedParams p;
  p.machines = cfg.machines;
  p.horizon = cfg.horizon;
  for (int i = 0; i < cfg.jobs; ++i) {
    p.jobs.push_back({uniform(1, cfg.max_base), uniform(0, cfg.max_penalty),
                      uniform(1, cfg.horizon)});
  }
  return p;
}

inline SchedParams read_sched_params(std::istream& in) {
  SchedParams p;
  bool have_m = false;
  bool have_h = false;
  for (const ParamLine& l : read_param_lines(in)) {
    if (l.key == "machines") {
      l.arity(1);
      p.machines = l.as_int<int>();
      have_m = true;
    } else if (l.key == "horizon") {
      l.arity(1);
      p.horizon = l.as_int<int>();
      have_h = true;
    } else if (l.key == "job") {
      l.arity(3);
      p.jobs.push_back({l.as_int<int>(0), l.as_int<int>(1), l.as_int<int>(2)});
    } else {
      l.fail("unknown key");
    }
  }
  if (!have_m || !have_h) throw ParseError("machines and horizon are required");
  try {
    p.validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
  return p;
}

inline void write_sched_params(std::ostream& os, const SchedParams& p) {
  os << "machines " << p.machines << '\n';
  os << "horizon " << p.horizon << '\n';
  for (const auto& j : p.jobs) {
    os << "job " << j.base << ' ' << j.penalty << ' ' << j.deadline << '\n';
  }
}

}  // namespace gspp::apps

#endif  // GSPP_APPS_SCHEDULING_HPP
