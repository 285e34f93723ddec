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

#ifndef GSPP_RELAXATION_HPP
#define GSPP_RELAXATION_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "gspp/instance.hpp"
#include "gspp/matching.hpp"

namespace gspp {

/// Cheapest and second-cheapest option per task.
struct TaskCostProfile {
  std::vector<Cost> best;                 // c'_i
  std::vector<Cost> second;               // c''_i, kInfinity if |Omega_i| = 1
  std::vector<AssignmentIndex> argmin;    // attains best (lowest id on ties)

  Cost trivial_bound() const {
    Cost sum = 0;
    for (Cost c : best) sum = add_cost(sum, c);
    return sum;
  }
};

inline TaskCostProfile task_cost_profile(const Instance& inst) {
  inst.require_valid();
  TaskCostProfile p;
  const auto n = static_cast<std::size_t>(inst.task_count());
  p.best.resize(n);
  p.second.resize(n);
  p.argmin.resize(n);
  for (TaskId t = 0; t < inst.task_count(); ++t) {
    const auto opts = inst.options(t);
    p.argmin[t] = opts[0];
    p.best[t] = inst.cost(opts[0]);
    p.second[t] = opts.size() > 1 ? inst.cost(opts[1]) : kInfinity;
  }
  return p;
}

/// Sum of the cheapest option of every task.
inline Cost trivial_bound(const Instance& inst) {
  return task_cost_profile(inst).trivial_bound();
}

enum class GraphStatus {
  kOk,
  kInfeasible,     // no feasible solution exists
  kFixedUnusable,  // the fixed assignment is in no feasible solution
};

/// A graph over tasks. vertex_task[v] is the task of vertex v, or -1 for the
/// artificial vertex that pads an odd vertex count.
struct TaskGraph {
  GraphStatus status = GraphStatus::kOk;
  WeightedGraph graph;
  std::vector<TaskId> vertex_task;
};

/// Conflict graph on the cheapest options: edge (i, j) when those two are
/// incompatible, weighted by the smaller second-best increase.
inline TaskGraph build_g1(const Instance& inst) {
  const TaskCostProfile p = task_cost_profile(inst);
  TaskGraph out;
  const int n = inst.task_count();
  out.graph = WeightedGraph(n);
  out.vertex_task.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.vertex_task[i] = i;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (inst.pair_compatible(p.argmin[i], p.argmin[j])) continue;
      const Cost di = is_infinite(p.second[i]) ? kInfinity
                                               : p.second[i] - p.best[i];
      const Cost dj = is_infinite(p.second[j]) ? kInfinity
                                               : p.second[j] - p.best[j];
      const Cost w = std::min(di, dj);
      if (is_infinite(w)) {
        // Two single-option tasks whose only options clash.
        out.status = GraphStatus::kInfeasible;
        out.graph.edges.clear();
        return out;
      }
      out.graph.add_edge(i, j, w);
    }
  }
  return out;
}

/// Max-weight matching of G1 plus the trivial bound; kInfinity when G1
/// already proves infeasibility.
inline Cost lb1(const Instance& inst) {
  const TaskGraph g1 = build_g1(inst);
  if (g1.status != GraphStatus::kOk) return kInfinity;
  MatchingSolver solver;
  return add_cost(solver.max_weight(g1.graph.n, g1.graph.edges),
                  trivial_bound(inst));
}

/// Cheapest c(a) + c(b) over a in `left`, b in `right` with ok(a, b). Both
/// lists must be sorted by cost; the scan stops as soon as no remaining pair
/// can beat the best found. kInfinity if no pair qualifies.
template <class PairOk>
Cost cheapest_pair(const Instance& inst, std::span<const AssignmentIndex> left,
                   std::span<const AssignmentIndex> right, PairOk&& ok) {
  if (left.empty() || right.empty()) return kInfinity;
  Cost best = kInfinity;
  const Cost right_min = inst.cost(right.front());
  for (AssignmentIndex a : left) {
    const Cost ca = inst.cost(a);
    if (ca + right_min >= best) break;
    for (AssignmentIndex b : right) {
      const Cost sum = ca + inst.cost(b);
      if (sum >= best) break;
      if (ok(a, b)) {
        best = sum;
        break;
      }
    }
  }
  return best;
}

/// Complete pair graph over `tasks`, where lists[v] holds the admissible
/// options of tasks[v] sorted by cost. Edge weight is the cheapest pair
/// accepted by `ok`; an odd vertex count gets an artificial vertex whose
/// edge to v costs the cheapest admissible option of v. `missing` is the
/// status reported when some list or some pair is empty.
template <class PairOk>
TaskGraph build_pair_graph(const Instance& inst,
                           std::span<const TaskId> tasks,
                           std::span<const std::span<const AssignmentIndex>> lists,
                           PairOk&& ok, GraphStatus missing) {
  TaskGraph out;
  const int m = static_cast<int>(tasks.size());
  const bool odd = (m % 2) == 1;
  out.graph = WeightedGraph(m + (odd ? 1 : 0));
  out.vertex_task.assign(tasks.begin(), tasks.end());
  if (odd) out.vertex_task.push_back(-1);
  for (int v = 0; v < m; ++v) {
    if (lists[v].empty()) {
      out.status = missing;
      out.graph.edges.clear();
      return out;
    }
  }
  out.graph.edges.reserve(static_cast<std::size_t>(m) * (m + 1) / 2);
  for (int u = 0; u < m; ++u) {
    for (int v = u + 1; v < m; ++v) {
      const Cost w = cheapest_pair(inst, lists[u], lists[v], ok);
      if (is_infinite(w)) {
        out.status = missing;
        out.graph.edges.clear();
        return out;
      }
      out.graph.add_edge(u, v, w);
    }
    if (odd) out.graph.add_edge(u, m, inst.cost(lists[u].front()));
  }
  return out;
}

/// G2 (no fixed assignment) or the probing graph G2,k (fixed = id of y_k):
/// complete graph over the remaining tasks weighted by the cheapest
/// compatible pair; with a fixed assignment, both members of the pair and
/// the artificial-vertex options must also be compatible with it.
inline TaskGraph build_g2(const Instance& inst,
                          std::optional<AssignmentId> fixed = std::nullopt) {
  inst.require_valid();
  std::vector<TaskId> tasks;
  std::vector<std::vector<AssignmentIndex>> filtered;
  std::vector<std::span<const AssignmentIndex>> lists;
  auto pair_ok = [&inst](AssignmentIndex a, AssignmentIndex b) {
    return inst.pair_compatible(a, b);
  };
  if (!fixed) {
    for (TaskId t = 0; t < inst.task_count(); ++t) {
      tasks.push_back(t);
      lists.push_back(inst.options(t));
    }
    return build_pair_graph(inst, tasks, lists, pair_ok,
                            GraphStatus::kInfeasible);
  }
  const AssignmentIndex k = inst.index_of(*fixed);
  const TaskId fixed_task = inst.task_of(k);
  for (TaskId t = 0; t < inst.task_count(); ++t) {
    if (t == fixed_task) continue;
    tasks.push_back(t);
    auto& f = filtered.emplace_back();
    for (AssignmentIndex a : inst.options(t)) {
      if (inst.pair_compatible(k, a)) f.push_back(a);
    }
  }
  for (const auto& f : filtered) lists.emplace_back(f);
  return build_pair_graph(inst, tasks, lists, pair_ok,
                          GraphStatus::kFixedUnusable);
}

/// Weight of a maximum-weight matching of G2; kInfinity proves infeasibility.
inline Cost lb2(const Instance& inst) {
  const TaskGraph g2 = build_g2(inst);
  if (g2.status != GraphStatus::kOk) return kInfinity;
  MatchingSolver solver;
  return solver.max_weight(g2.graph.n, g2.graph.edges);
}

/// c(y_k) + LB2,k, or kInfinity when y_k can be in no feasible solution.
inline Cost probe_bound(const Instance& inst, AssignmentId k) {
  const TaskGraph g = build_g2(inst, k);
  if (g.status != GraphStatus::kOk) return kInfinity;
  MatchingSolver solver;
  return add_cost(inst.cost(inst.index_of(k)),
                  solver.max_weight(g.graph.n, g.graph.edges));
}

/// Probe bounds for every assignment of one instance.
///
/// Each task pair keeps the first `cache_depth` compatible option pairs in
/// ascending cost-sum order. A probe takes the first cached pair whose two
/// members are compatible with y_k; because the cache is a complete prefix
/// of the sorted compatible pairs, that is the exact c2,k. Only when every
/// cached pair clashes with y_k does the probe fall back to a filtered scan.
class ProbeEngine {
 public:
  struct Scratch {
    std::vector<std::uint32_t> stamp;
    std::vector<char> ok;
    std::uint32_t generation = 0;
    MatchingSolver solver;
    std::vector<Edge> edges;
    std::vector<int> vertex_of_task;
    std::vector<Cost> untouched;  // per task, matching when y_k changes no edge
    std::uint64_t fallbacks = 0;
  };

  explicit ProbeEngine(const Instance& inst, std::size_t cache_depth = 16)
      : inst_(inst), n_(inst.task_count()) {
    inst.require_valid();
    const auto n = static_cast<std::size_t>(n_);
    cache_.resize(n * n);
    complete_.assign(n * n, 0);
    base_.assign(n * n, kInfinity);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) fill_cache(i, j, cache_depth);
    }
  }

  std::size_t size() const { return inst_.size(); }

  Scratch make_scratch() const {
    Scratch s;
    s.stamp.assign(inst_.size(), 0);
    s.ok.assign(inst_.size(), 0);
    s.vertex_of_task.assign(static_cast<std::size_t>(n_), -1);
    s.untouched.assign(static_cast<std::size_t>(n_), -1);
    return s;
  }

  Cost probe(AssignmentIndex k, Scratch& s) const {
    if (++s.generation == 0) {
      std::fill(s.stamp.begin(), s.stamp.end(), 0);
      s.generation = 1;
    }
    const TaskId tk = inst_.task_of(k);
    auto compatible_with_k = [&](AssignmentIndex a) {
      const auto ua = static_cast<std::size_t>(a);
      if (s.stamp[ua] != s.generation) {
        s.stamp[ua] = s.generation;
        s.ok[ua] = inst_.pair_compatible(k, a) ? 1 : 0;
      }
      return s.ok[ua] != 0;
    };

    int m = 0;
    for (int t = 0; t < n_; ++t) s.vertex_of_task[t] = t == tk ? -1 : m++;
    if (m == 0) return inst_.cost(k);
    const bool odd = (m % 2) == 1;
    bool untouched = true;
    s.edges.clear();
    for (int i = 0; i < n_; ++i) {
      if (i == tk) continue;
      for (int j = i + 1; j < n_; ++j) {
        if (j == tk) continue;
        const Cost w = edge_weight(i, j, compatible_with_k, s);
        if (is_infinite(w)) return kInfinity;
        untouched = untouched && w == base_[slot(i, j)];
        s.edges.push_back({s.vertex_of_task[i], s.vertex_of_task[j], w});
      }
      if (odd) {
        Cost w = kInfinity;
        for (AssignmentIndex a : inst_.options(i)) {
          if (compatible_with_k(a)) {
            w = inst_.cost(a);
            break;
          }
        }
        if (is_infinite(w)) return kInfinity;
        untouched = untouched && w == inst_.cost(inst_.options(i).front());
        s.edges.push_back({s.vertex_of_task[i], m, w});
      }
    }
    // An untouched graph is G2 minus task tk, so its matching is shared by
    // every such probe of that task.
    Cost& memo = s.untouched[static_cast<std::size_t>(tk)];
    if (untouched && memo >= 0) return add_cost(inst_.cost(k), memo);
    const Cost w = s.solver.max_weight(m + (odd ? 1 : 0), s.edges);
    if (untouched) memo = w;
    return add_cost(inst_.cost(k), w);
  }

  /// Probe bounds for all assignments (indexed like Instance::assignments),
  /// split over `threads` workers.
  std::vector<Cost> probe_all(unsigned threads = 0,
                              std::uint64_t* fallbacks = nullptr) const {
    const std::size_t total = inst_.size();
    std::vector<Cost> out(total, kInfinity);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
    std::vector<std::uint64_t> fb(threads, 0);
    auto work = [&](unsigned w) {
      Scratch s = make_scratch();
      for (std::size_t k = w; k < total; k += threads) {
        out[k] = probe(static_cast<AssignmentIndex>(k), s);
      }
      fb[w] = s.fallbacks;
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    if (fallbacks) {
      *fallbacks = 0;
      for (auto f : fb) *fallbacks += f;
    }
    return out;
  }

 private:
  using Pair = std::pair<AssignmentIndex, AssignmentIndex>;

  std::size_t slot(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  // Best-first walk over (x, y) index pairs of the two sorted option lists:
  // pops pairs in nondecreasing cost sum, ties by (x, y).
  void fill_cache(int i, int j, std::size_t depth) {
    const auto left = inst_.options(i);
    const auto right = inst_.options(j);
    struct Item {
      Cost sum;
      std::uint32_t x;
      std::uint32_t y;
      bool operator>(const Item& o) const {
        return std::tie(sum, x, y) > std::tie(o.sum, o.x, o.y);
      }
    };
    std::vector<Item> heap;
    auto push = [&](std::uint32_t x, std::uint32_t y) {
      heap.push_back({inst_.cost(left[x]) + inst_.cost(right[y]), x, y});
      std::push_heap(heap.begin(), heap.end(), std::greater<>{});
    };
    auto& cache = cache_[slot(i, j)];
    push(0, 0);
    while (!heap.empty() && cache.size() < depth) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
      const Item it = heap.back();
      heap.pop_back();
      if (it.y + 1 < right.size()) push(it.x, it.y + 1);
      if (it.y == 0 && it.x + 1 < left.size()) push(it.x + 1, 0);
      if (inst_.pair_compatible(left[it.x], right[it.y])) {
        cache.emplace_back(left[it.x], right[it.y]);
      }
    }
    complete_[slot(i, j)] = heap.empty() ? 1 : 0;
    if (!cache.empty()) {
      base_[slot(i, j)] = inst_.cost(cache.front().first) +
                          inst_.cost(cache.front().second);
    }
  }

  template <class CompatK>
  Cost edge_weight(int i, int j, CompatK& compatible_with_k,
                   Scratch& s) const {
    const auto& cache = cache_[slot(i, j)];
    for (const auto& [a, b] : cache) {
      if (compatible_with_k(a) && compatible_with_k(b)) {
        return inst_.cost(a) + inst_.cost(b);
      }
    }
    if (complete_[slot(i, j)]) return kInfinity;
    ++s.fallbacks;
    // Filtered scan; options of i that clash with y_k are skipped before
    // their inner loop, and compatibility with y_k is memoised.
    const auto left = inst_.options(i);
    const auto right = inst_.options(j);
    const Cost right_min = inst_.cost(right.front());
    Cost best = kInfinity;
    for (AssignmentIndex a : left) {
      const Cost ca = inst_.cost(a);
      if (ca + right_min >= best) break;
      if (!compatible_with_k(a)) continue;
      for (AssignmentIndex b : right) {
        const Cost sum = ca + inst_.cost(b);
        if (sum >= best) break;
        if (compatible_with_k(b) && inst_.pair_compatible(a, b)) {
          best = sum;
          break;
        }
      }
    }
    return best;
  }

  const Instance& inst_;
  int n_;
  std::vector<std::vector<Pair>> cache_;
  std::vector<char> complete_;
  std::vector<Cost> base_;  // unfiltered c2(i, j)
};

/// Trivial bound, LB1 and LB2 with graph sizes and timings.
struct BoundReport {
  std::string instance;
  int tasks = 0;
  std::size_t assignments = 0;
  int decimals = 0;
  Cost trivial = 0;
  Cost lb1 = 0;
  Cost lb2 = 0;
  std::size_t e1_edges = 0;
  std::size_t e2_edges = 0;
  double lb1_seconds = 0;
  double lb2_seconds = 0;
};

inline BoundReport compute_bounds(const Instance& inst) {
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };
  BoundReport r;
  r.instance = inst.name();
  r.tasks = inst.task_count();
  r.assignments = inst.size();
  r.decimals = inst.decimals();
  r.trivial = trivial_bound(inst);

  const auto t0 = Clock::now();
  const TaskGraph g1 = build_g1(inst);
  MatchingSolver solver;
  r.e1_edges = g1.graph.edges.size();
  r.lb1 = g1.status == GraphStatus::kOk
              ? add_cost(solver.max_weight(g1.graph.n, g1.graph.edges),
                         r.trivial)
              : kInfinity;
  const auto t1 = Clock::now();
  const TaskGraph g2 = build_g2(inst);
  r.e2_edges = g2.graph.edges.size();
  r.lb2 = g2.status == GraphStatus::kOk
              ? solver.max_weight(g2.graph.n, g2.graph.edges)
              : kInfinity;
  const auto t2 = Clock::now();
  r.lb1_seconds = seconds(t0, t1);
  r.lb2_seconds = seconds(t1, t2);
  return r;
}

}  // namespace gspp

#endif  // GSPP_RELAXATION_HPP
