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

#ifndef GSPP_EXACT_HPP
#define GSPP_EXACT_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gspp/instance.hpp"
#include "gspp/matching.hpp"
#include "gspp/relaxation.hpp"
#include "gspp/solution.hpp"

namespace gspp {

enum class SolveStatus {
  kOptimal,
  kFeasibleTimeout,
  kInfeasible,
  kNoIncumbentTimeout,
};

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleTimeout: return "feasible-timeout";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kNoIncumbentTimeout: return "no-incumbent-timeout";
  }
  return "unknown";
}

inline std::optional<SolveStatus> parse_solve_status(std::string_view s) {
  for (SolveStatus v : {SolveStatus::kOptimal, SolveStatus::kFeasibleTimeout,
                        SolveStatus::kInfeasible,
                        SolveStatus::kNoIncumbentTimeout}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

enum class TaskOrder {
  kFewestOptions,     // static: ascending |Omega_i|
  kFewestCandidates,  // dynamic: fewest surviving candidates at each node
};

struct BranchOptions {
  double time_limit = 0;        // seconds; <= 0 means unlimited
  std::uint64_t node_limit = 0; // 0 means unlimited
  bool pruning = true;
  TaskOrder order = TaskOrder::kFewestOptions;
  /// Residual LB2 is computed at depths divisible by this; other depths use
  /// the sum of residual minima. 0 disables LB2 entirely.
  int bound_every = 1;
  /// Per-task assignment ids of a known solution; used as the first
  /// incumbent when feasible.
  std::optional<std::vector<AssignmentId>> seed;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;
  Solution incumbent;
  Cost best_bound = 0;
  std::uint64_t nodes = 0;
  double seconds = 0;
};

namespace detail {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const BranchOptions& opts)
      : inst_(inst), opts_(opts), n_(inst.task_count()) {
    order_.resize(static_cast<std::size_t>(n_));
    for (TaskId t = 0; t < n_; ++t) order_[static_cast<std::size_t>(t)] = t;
    std::stable_sort(order_.begin(), order_.end(), [&](TaskId a, TaskId b) {
      return inst.options(a).size() < inst.options(b).size();
    });
    lists_.resize(static_cast<std::size_t>(n_) + 1);
    for (auto& level : lists_) level.resize(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) {
      const auto opts_p = inst.options(order_[static_cast<std::size_t>(p)]);
      lists_[0][static_cast<std::size_t>(p)].assign(opts_p.begin(), opts_p.end());
    }
    load_.assign(inst.capacities().size(), 0);
    avail_.assign(inst.capacities().size(), 0);
    chosen_.assign(static_cast<std::size_t>(n_), 0);
    perm_.resize(static_cast<std::size_t>(n_));
    for (int p = 0; p < n_; ++p) perm_[static_cast<std::size_t>(p)] = p;
  }

  SolveResult run() {
    const auto start = Clock::now();
    if (opts_.time_limit > 0) {
      deadline_ = start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(opts_.time_limit));
    }
    if (opts_.seed) {
      const Evaluation ev = evaluate(inst_, *opts_.seed);
      if (ev.feasible) {
        best_ = ev.cost;
        best_chosen_ = *opts_.seed;
      }
    }
    const Cost root = node_bound(0, 0, /*force=*/true);
    if (!is_infinite(root)) search(0, 0, root);

    SolveResult r;
    r.nodes = nodes_;
    r.has_incumbent = !best_chosen_.empty();
    if (r.has_incumbent) {
      r.incumbent = Solution{best_chosen_, best_, true};
    }
    if (!stopped_) {
      r.status = r.has_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      r.best_bound = r.has_incumbent ? best_ : kInfinity;
    } else {
      r.status = r.has_incumbent ? SolveStatus::kFeasibleTimeout
                                 : SolveStatus::kNoIncumbentTimeout;
      Cost open = best_;
      for (Cost b : open_bounds_) open = std::min(open, b);
      r.best_bound = std::min(open, best_);
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
  }

 private:
  using Clock = std::chrono::steady_clock;

  bool should_stop() {
    if (stopped_) return true;
    if (opts_.node_limit > 0 && nodes_ >= opts_.node_limit) stopped_ = true;
    if (deadline_ && (nodes_ & 63) == 0 && Clock::now() >= *deadline_) {
      stopped_ = true;
    }
    return stopped_;
  }

  // Candidate list at level d of the task branched on at depth p.
  std::vector<AssignmentIndex>& at(int d, int p) {
    return lists_[static_cast<std::size_t>(d)]
                 [static_cast<std::size_t>(perm_[static_cast<std::size_t>(p)])];
  }
  const std::vector<AssignmentIndex>& at(int d, int p) const {
    return lists_[static_cast<std::size_t>(d)]
                 [static_cast<std::size_t>(perm_[static_cast<std::size_t>(p)])];
  }
  TaskId task_at(int p) const {
    return order_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(p)])];
  }

  // Moves the remaining task with the fewest candidates to depth d. Deeper
  // levels only permute positions beyond d, so the prefix stays intact.
  void pick_branch_task(int d) {
    int best = d;
    for (int p = d + 1; p < n_; ++p) {
      if (at(d, p).size() < at(d, best).size()) best = p;
    }
    std::swap(perm_[static_cast<std::size_t>(d)],
              perm_[static_cast<std::size_t>(best)]);
  }

  // Sum of the cheapest remaining option of every unassigned task.
  Cost residual_minima(int d) const {
    Cost sum = 0;
    for (int p = d; p < n_; ++p) {
      sum += inst_.cost(at(d, p).front());
    }
    return sum;
  }

  Cost node_bound(int d, Cost partial, bool force = false) {
    if (d == n_) return partial;
    for (int p = d; p < n_; ++p) {
      if (at(d, p).empty()) return kInfinity;
    }
    const Cost trivial = partial + residual_minima(d);
    if (!force && !opts_.pruning) return trivial;
    if (opts_.bound_every <= 0 || d % opts_.bound_every != 0) return trivial;

    for (std::size_t r = 0; r < load_.size(); ++r) {
      avail_[r] = inst_.capacity(static_cast<ResourceId>(r)) - load_[r];
    }
    spans_.clear();
    tasks_.clear();
    for (int p = d; p < n_; ++p) {
      tasks_.push_back(task_at(p));
      spans_.emplace_back(at(d, p));
    }
    auto ok = [this](AssignmentIndex a, AssignmentIndex b) {
      return inst_.footprints_disjoint(a, b) &&
             inst_.capacities_fit(a, b, avail_) && inst_.passes_filter(a, b);
    };
    const TaskGraph g = build_pair_graph(inst_, std::span<const TaskId>(tasks_),
                                         std::span<const std::span<const AssignmentIndex>>(spans_),
                                         ok, GraphStatus::kInfeasible);
    if (g.status != GraphStatus::kOk) return kInfinity;
    return std::max(trivial,
                    partial + solver_.max_weight(g.graph.n, g.graph.edges));
  }

  bool fits_load(AssignmentIndex c) const {
    for (const CapUse& u : inst_.at(c).cap_usage) {
      if (load_[u.resource] + u.amount > inst_.capacity(u.resource)) return false;
    }
    return true;
  }

  // Builds level d + 1 after fixing a at depth d; false if a task runs dry.
  bool descend(int d, AssignmentIndex a) {
    for (const CapUse& u : inst_.at(a).cap_usage) load_[u.resource] += u.amount;
    for (int p = d + 1; p < n_; ++p) {
      const auto& src = at(d, p);
      auto& dst = at(d + 1, p);
      dst.clear();
      for (AssignmentIndex c : src) {
        if (inst_.pair_compatible(a, c) && fits_load(c)) dst.push_back(c);
      }
      if (dst.empty()) return false;
    }
    return true;
  }

  void ascend(AssignmentIndex a) {
    for (const CapUse& u : inst_.at(a).cap_usage) load_[u.resource] -= u.amount;
  }

  void search(int d, Cost partial, Cost bound) {
    ++nodes_;
    if (d == n_) {
      if (partial < best_ || best_chosen_.empty()) record(partial);
      return;
    }
    if (opts_.pruning && !best_chosen_.empty() && bound >= best_) return;
    open_bounds_.push_back(bound);
    if (opts_.order == TaskOrder::kFewestCandidates) pick_branch_task(d);
    const Cost rest = residual_minima(d) - inst_.cost(at(d, d).front());
    const auto& mine = at(d, d);
    for (std::size_t i = 0; i < mine.size(); ++i) {
      if (should_stop()) break;
      const AssignmentIndex a = mine[i];
      const Cost child_partial = partial + inst_.cost(a);
      if (opts_.pruning && !best_chosen_.empty() &&
          child_partial + rest >= best_) {
        break;  // children are in ascending cost
      }
      chosen_[static_cast<std::size_t>(d)] = a;
      if (descend(d, a)) {
        const Cost child_bound = node_bound(d + 1, child_partial);
        if (!is_infinite(child_bound) || !opts_.pruning) {
          search(d + 1, child_partial, child_bound);
        }
      }
      ascend(a);
    }
    if (!stopped_) open_bounds_.pop_back();
  }

  void record(Cost cost) {
    best_ = cost;
    best_chosen_.assign(static_cast<std::size_t>(n_), 0);
    for (int p = 0; p < n_; ++p) {
      const TaskId t = task_at(p);
      best_chosen_[static_cast<std::size_t>(t)] =
          inst_.at(chosen_[static_cast<std::size_t>(p)]).id;
    }
  }

  const Instance& inst_;
  const BranchOptions& opts_;
  int n_;
  std::vector<TaskId> order_;
  std::vector<int> perm_;  // depth -> position in order_
  std::vector<std::vector<std::vector<AssignmentIndex>>> lists_;
  std::vector<std::int64_t> load_;
  std::vector<std::int64_t> avail_;
  std::vector<AssignmentIndex> chosen_;
  std::vector<TaskId> tasks_;
  std::vector<std::span<const AssignmentIndex>> spans_;
  MatchingSolver solver_;

  Cost best_ = kInfinity;
  std::vector<AssignmentId> best_chosen_;
  std::vector<Cost> open_bounds_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  std::optional<Clock::time_point> deadline_;
};

}  // namespace detail

/// Depth-first branch and bound. Tasks are fixed fewest-options first and
/// children are tried cheapest first; every candidate list is kept filtered
/// against the partial solution, and nodes are bounded by partial cost plus
/// LB2 of the residual instance.
inline SolveResult branch_and_bound(const Instance& inst,
                                    const BranchOptions& options = {}) {
  inst.require_valid();
  detail::BranchAndBound bb(inst, options);
  return bb.run();
}

/// Writes the 0-1 program in LP text format. Variables are y_<id>; rows are
/// task_<t> (= 1), res_<r> (<= 1) for every resource some footprint uses,
/// and cap_<c> (<= capacity) for every capacitated resource with users.
inline void export_lp(const Instance& inst, std::ostream& os) {
  inst.require_valid();
  const int dec = inst.decimals();
  constexpr int kTermsPerLine = 8;
  auto var = [&](AssignmentIndex a) {
    return "y_" + std::to_string(inst.at(a).id);
  };
  auto write_row = [&](const std::string& name,
                       const std::vector<std::pair<std::string, AssignmentIndex>>& terms,
                       const std::string& tail) {
    os << ' ' << name << ':';
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i > 0 && i % kTermsPerLine == 0) os << "\n   ";
      os << (i == 0 ? " " : " + ");
      if (!terms[i].first.empty()) os << terms[i].first << ' ';
      os << var(terms[i].second);
    }
    if (!tail.empty()) os << ' ' << tail;
    os << '\n';
  };

  // Assignments in id order give a stable layout.
  std::vector<AssignmentIndex> by_id(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    by_id[i] = static_cast<AssignmentIndex>(i);
  }
  std::sort(by_id.begin(), by_id.end(), [&](AssignmentIndex a, AssignmentIndex b) {
    return inst.at(a).id < inst.at(b).id;
  });

  os << "\\ GSPP model " << inst.name() << '\n';
  os << "Minimize\n";
  {
    std::vector<std::pair<std::string, AssignmentIndex>> terms;
    for (AssignmentIndex a : by_id) terms.emplace_back(format_cost(inst.cost(a), dec), a);
    write_row("obj", terms, "");
  }
  os << "Subject To\n";
  std::vector<std::vector<std::pair<std::string, AssignmentIndex>>> task_rows(
      static_cast<std::size_t>(inst.task_count()));
  std::vector<std::vector<std::pair<std::string, AssignmentIndex>>> res_rows(
      inst.resource_count());
  std::vector<std::vector<std::pair<std::string, AssignmentIndex>>> cap_rows(
      inst.capacities().size());
  for (AssignmentIndex a : by_id) {
    const Assignment& as = inst.at(a);
    task_rows[static_cast<std::size_t>(as.task)].emplace_back("", a);
    for (ResourceId r : as.footprint) res_rows[r].emplace_back("", a);
    for (const CapUse& u : as.cap_usage) {
      if (u.amount != 0) cap_rows[u.resource].emplace_back(std::to_string(u.amount), a);
    }
  }
  for (std::size_t t = 0; t < task_rows.size(); ++t) {
    write_row("task_" + std::to_string(t), task_rows[t], "= 1");
  }
  for (std::size_t r = 0; r < res_rows.size(); ++r) {
    if (!res_rows[r].empty()) {
      write_row("res_" + std::to_string(r), res_rows[r], "<= 1");
    }
  }
  for (std::size_t c = 0; c < cap_rows.size(); ++c) {
    if (!cap_rows[c].empty()) {
      write_row("cap_" + std::to_string(c), cap_rows[c],
                "<= " + std::to_string(inst.capacity(static_cast<ResourceId>(c))));
    }
  }
  os << "Binary\n";
  for (std::size_t i = 0; i < by_id.size(); ++i) {
    os << ' ' << var(by_id[i]);
    if ((i + 1) % kTermsPerLine == 0 || i + 1 == by_id.size()) os << '\n';
  }
  os << "End\n";
}

inline void export_lp(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  export_lp(inst, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace gspp

#endif  // GSPP_EXACT_HPP
