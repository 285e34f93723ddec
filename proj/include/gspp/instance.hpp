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

#ifndef GSPP_INSTANCE_HPP
#define GSPP_INSTANCE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gspp/cost.hpp"

namespace gspp {

using TaskId = std::int32_t;
using AssignmentId = std::int32_t;
using ResourceId = std::uint32_t;

/// Position of an assignment inside Instance::assignments(). Algorithms work
/// on indices; ids are what users and files see.
using AssignmentIndex = std::int32_t;

struct CapUse {
  ResourceId resource = 0;
  std::int64_t amount = 0;

  friend bool operator==(const CapUse&, const CapUse&) = default;
};

struct CapacitatedResource {
  ResourceId id = 0;
  std::int64_t capacity = 1;

  friend bool operator==(const CapacitatedResource&,
                         const CapacitatedResource&) = default;
};

/// One named axis of the resource-tuple space. Resource ids are the
/// mixed-radix encoding of tuples, last dimension fastest.
struct Dimension {
  std::string name;
  std::uint32_t size = 0;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

/// One column of the model: a way of executing a single task.
struct Assignment {
  AssignmentId id = 0;
  TaskId task = 0;
  Cost cost = 0;
  std::vector<ResourceId> footprint;  // packing rows with coefficient 1
  std::vector<CapUse> cap_usage;      // usage of capacitated resources

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Plain description of an instance, as read from or written to a file.
struct InstanceData {
  std::string name = "unnamed";
  std::string application = "generic";
  int decimals = 0;
  TaskId task_count = 0;
  std::vector<Dimension> dims;
  ResourceId resource_count = 0;
  std::vector<CapacitatedResource> capacities;
  std::vector<Assignment> assignments;

  friend bool operator==(const InstanceData&, const InstanceData&) = default;
};

/// Extra pairwise side constraint an application adapter can install on top
/// of footprint disjointness and capacities. Must be symmetric and pure; it
/// is part of the model, so feasibility checks apply it as well.
using PairFilter = std::function<bool(const Assignment&, const Assignment&)>;

enum class ViolationKind {
  kNegativeCost,
  kCostTooLarge,
  kEmptyAssignmentSet,
  kDuplicateId,
  kNegativeId,
  kBadTask,
  kFootprintOutsideR,
  kBadCapacityResource,
  kCapacityUsage,
  kBadCapacity,
  kBadDimensions,
  kBadDecimals,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
  }
};

namespace detail {

struct Run {
  ResourceId lo = 0;  // inclusive
  ResourceId hi = 0;  // exclusive
};

inline std::vector<Run> to_runs(std::span<const ResourceId> sorted_ids) {
  std::vector<Run> runs;
  for (ResourceId r : sorted_ids) {
    if (!runs.empty() && runs.back().hi == r) {
      ++runs.back().hi;
    } else {
      runs.push_back({r, r + 1});
    }
  }
  return runs;
}

inline bool runs_disjoint(std::span<const Run> a, std::span<const Run> b) {
  if (a.empty() || b.empty()) return true;
  if (a.back().hi <= b.front().lo || b.back().hi <= a.front().lo) return true;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].hi <= b[j].lo) {
      ++i;
    } else if (b[j].hi <= a[i].lo) {
      ++j;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Immutable GSPP instance. Construction normalizes footprints into sorted
/// sets, builds per-task option lists sorted by (cost, id) and runs the
/// structural validation once; algorithms require valid().
class Instance {
 public:
  Instance() : Instance(InstanceData{}) {}

  explicit Instance(InstanceData data, PairFilter extra = {})
      : data_(std::move(data)),
        extra_(extra ? std::make_shared<const PairFilter>(std::move(extra))
                     : nullptr) {
    build();
  }

  /// Same data with another extra filter (or none).
  Instance with_filter(PairFilter extra) const {
    return Instance(data_, std::move(extra));
  }

  const InstanceData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  const std::string& application() const { return data_.application; }
  int decimals() const { return data_.decimals; }
  TaskId task_count() const { return data_.task_count; }
  ResourceId resource_count() const { return data_.resource_count; }
  std::span<const CapacitatedResource> capacities() const {
    return data_.capacities;
  }
  std::int64_t capacity(ResourceId r) const {
    return data_.capacities[r].capacity;
  }

  std::size_t size() const { return data_.assignments.size(); }
  std::span<const Assignment> assignments() const { return data_.assignments; }
  const Assignment& at(AssignmentIndex idx) const {
    return data_.assignments[static_cast<std::size_t>(idx)];
  }
  Cost cost(AssignmentIndex idx) const { return at(idx).cost; }
  TaskId task_of(AssignmentIndex idx) const { return at(idx).task; }

  /// Options of a task as indices, sorted by (cost, id).
  std::span<const AssignmentIndex> options(TaskId task) const {
    return by_task_[static_cast<std::size_t>(task)];
  }

  std::optional<AssignmentIndex> find(AssignmentId id) const {
    auto it = index_of_.find(id);
    if (it == index_of_.end()) return std::nullopt;
    return it->second;
  }
  AssignmentIndex index_of(AssignmentId id) const {
    auto idx = find(id);
    if (!idx) {
      throw ContractError("unknown assignment id " + std::to_string(id));
    }
    return *idx;
  }

  bool has_extra_filter() const { return extra_ != nullptr; }
  bool valid() const { return report_.ok(); }
  const ValidationReport& validation() const { return report_; }

  void require_valid() const {
    if (!valid()) {
      throw ContractError("instance '" + data_.name +
                          "' is not valid: " + report_.violations[0].message);
    }
  }

  bool footprints_disjoint(AssignmentIndex a, AssignmentIndex b) const {
    return detail::runs_disjoint(runs_[static_cast<std::size_t>(a)],
                                 runs_[static_cast<std::size_t>(b)]);
  }

  /// Capacity check of a pair against `available` per capacitated resource
  /// (the full capacities when empty).
  bool capacities_fit(AssignmentIndex a, AssignmentIndex b,
                      std::span<const std::int64_t> available = {}) const {
    const auto& ua = at(a).cap_usage;
    const auto& ub = at(b).cap_usage;
    if (ua.empty() || ub.empty() || ua.back().resource < ub.front().resource ||
        ub.back().resource < ua.front().resource) {
      return true;
    }
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ua.size() && j < ub.size()) {
      if (ua[i].resource < ub[j].resource) {
        ++i;
      } else if (ub[j].resource < ua[i].resource) {
        ++j;
      } else {
        const ResourceId r = ua[i].resource;
        const std::int64_t cap =
            available.empty() ? capacity(r) : available[r];
        if (ua[i].amount + ub[j].amount > cap) return false;
        ++i;
        ++j;
      }
    }
    return true;
  }

  bool passes_filter(AssignmentIndex a, AssignmentIndex b) const {
    return !extra_ || (*extra_)(at(a), at(b));
  }

  /// Default pairwise oracle: disjoint footprints, combined capacity usage
  /// within capacity, and the extra filter if installed. No task check.
  bool pair_compatible(AssignmentIndex a, AssignmentIndex b) const {
    return footprints_disjoint(a, b) && capacities_fit(a, b) &&
           passes_filter(a, b);
  }

  /// Sub-instance keeping the listed assignments (ids preserved, same task
  /// set). Tasks may end up with no options; check valid() afterwards.
  Instance restricted(std::span<const AssignmentIndex> keep) const {
    InstanceData sub = data_;
    sub.assignments.clear();
    sub.assignments.reserve(keep.size());
    std::vector<AssignmentIndex> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (AssignmentIndex idx : sorted) sub.assignments.push_back(at(idx));
    Instance out;
    out.data_ = std::move(sub);
    out.extra_ = extra_;
    out.build();
    return out;
  }

 private:
  void build();

  InstanceData data_;
  std::shared_ptr<const PairFilter> extra_;
  std::vector<std::vector<detail::Run>> runs_;
  std::vector<std::vector<AssignmentIndex>> by_task_;
  std::unordered_map<AssignmentId, AssignmentIndex> index_of_;
  ValidationReport report_;
};

inline void Instance::build() {
  auto& d = data_;
  runs_.clear();
  by_task_.clear();
  index_of_.clear();
  report_ = {};
  auto flag = [this](ViolationKind k, std::string msg) {
    report_.violations.push_back({k, std::move(msg)});
  };

  if (d.decimals < 0 || d.decimals > kMaxDecimals) {
    flag(ViolationKind::kBadDecimals,
         "decimals must be in [0," + std::to_string(kMaxDecimals) + "]");
  }
  if (!d.dims.empty()) {
    std::uint64_t product = 1;
    for (const auto& dim : d.dims) product *= dim.size;
    if (product != d.resource_count) {
      flag(ViolationKind::kBadDimensions,
           "dimension sizes multiply to " + std::to_string(product) +
               " but resource count is " + std::to_string(d.resource_count));
    }
  }
  for (std::size_t c = 0; c < d.capacities.size(); ++c) {
    if (d.capacities[c].id != c) {
      flag(ViolationKind::kBadCapacityResource,
           "capacitated resource ids must be dense, found " +
               std::to_string(d.capacities[c].id) + " at position " +
               std::to_string(c));
    }
    if (d.capacities[c].capacity < 1) {
      flag(ViolationKind::kBadCapacity,
           "capacity of resource " + std::to_string(c) + " is below 1");
    }
  }

  const std::size_t n_tasks =
      d.task_count > 0 ? static_cast<std::size_t>(d.task_count) : 0;
  by_task_.resize(n_tasks);
  runs_.reserve(d.assignments.size());
  for (std::size_t idx = 0; idx < d.assignments.size(); ++idx) {
    auto& a = d.assignments[idx];
    std::sort(a.footprint.begin(), a.footprint.end());
    a.footprint.erase(std::unique(a.footprint.begin(), a.footprint.end()),
                      a.footprint.end());
    std::sort(a.cap_usage.begin(), a.cap_usage.end(),
              [](const CapUse& x, const CapUse& y) {
                return x.resource < y.resource;
              });
    runs_.push_back(detail::to_runs(a.footprint));

    const std::string who = "assignment " + std::to_string(a.id);
    if (a.id < 0) flag(ViolationKind::kNegativeId, who + ": negative id");
    if (!index_of_.emplace(a.id, static_cast<AssignmentIndex>(idx)).second) {
      flag(ViolationKind::kDuplicateId, who + ": duplicate id");
    }
    if (a.cost < 0) flag(ViolationKind::kNegativeCost, who + ": negative cost");
    if (a.cost > kMaxFiniteCost) {
      flag(ViolationKind::kCostTooLarge, who + ": cost exceeds 2^40");
    }
    if (a.task < 0 || a.task >= d.task_count) {
      flag(ViolationKind::kBadTask, who + ": task out of range");
    } else {
      by_task_[static_cast<std::size_t>(a.task)].push_back(
          static_cast<AssignmentIndex>(idx));
    }
    if (!a.footprint.empty() && a.footprint.back() >= d.resource_count) {
      flag(ViolationKind::kFootprintOutsideR,
           who + ": footprint resource " + std::to_string(a.footprint.back()) +
               " outside R");
    }
    for (std::size_t u = 0; u < a.cap_usage.size(); ++u) {
      const auto& use = a.cap_usage[u];
      if (use.resource >= d.capacities.size() ||
          (u > 0 && a.cap_usage[u - 1].resource == use.resource)) {
        flag(ViolationKind::kBadCapacityResource,
             who + ": bad capacitated resource " +
                 std::to_string(use.resource));
      } else if (use.amount < 0 ||
                 use.amount > d.capacities[use.resource].capacity) {
        flag(ViolationKind::kCapacityUsage,
             who + ": usage of resource " + std::to_string(use.resource) +
                 " outside [0, capacity]");
      }
    }
  }
  for (std::size_t t = 0; t < n_tasks; ++t) {
    auto& opts = by_task_[t];
    if (opts.empty()) {
      flag(ViolationKind::kEmptyAssignmentSet,
           "task " + std::to_string(t) + ": empty assignment set");
    }
    std::sort(opts.begin(), opts.end(),
              [&d](AssignmentIndex x, AssignmentIndex y) {
                const auto& ax = d.assignments[static_cast<std::size_t>(x)];
                const auto& ay = d.assignments[static_cast<std::size_t>(y)];
                return std::pair(ax.cost, ax.id) < std::pair(ay.cost, ay.id);
              });
  }
}

/// Structural validation; never throws.
inline ValidationReport validate_instance(const Instance& inst) {
  return inst.validation();
}

/// Pairwise compatibility of two assignments of different tasks, by id.
inline bool compatible(const Instance& inst, AssignmentId j, AssignmentId k) {
  const AssignmentIndex a = inst.index_of(j);
  const AssignmentIndex b = inst.index_of(k);
  if (inst.task_of(a) == inst.task_of(b)) {
    throw ContractError("compatible(): assignments " + std::to_string(j) +
                        " and " + std::to_string(k) + " share a task");
  }
  return inst.pair_compatible(a, b);
}

}  // namespace gspp

#endif  // GSPP_INSTANCE_HPP
