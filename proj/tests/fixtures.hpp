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

// Shared test fixtures: the two hand-sized instances used throughout the
// suite and a seeded random instance / graph generator.

#ifndef GSPP_TESTS_FIXTURES_HPP
#define GSPP_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "gspp/instance.hpp"
#include "gspp/matching.hpp"

namespace gspp::testing {

inline Assignment make_assignment(AssignmentId id, TaskId task, Cost cost,
                                  std::vector<ResourceId> footprint,
                                  std::vector<CapUse> caps = {}) {
  return Assignment{id, task, cost, std::move(footprint), std::move(caps)};
}

// E1: 2 tasks, resources {r1, r2} = {0, 1}.
//   task 0: a11 = 0 (5, {r1}), a12 = 1 (8, {r2})
//   task 1: a21 = 2 (4, {r1}), a22 = 3 (9, {r2})
namespace e1 {
inline constexpr AssignmentId a11 = 0, a12 = 1, a21 = 2, a22 = 3;
}

inline InstanceData e1_data() {
  InstanceData d;
  d.name = "e1";
  d.task_count = 2;
  d.dims = {{"r", 2}};
  d.resource_count = 2;
  d.assignments = {
      make_assignment(e1::a11, 0, 5, {0}),
      make_assignment(e1::a12, 0, 8, {1}),
      make_assignment(e1::a21, 1, 4, {0}),
      make_assignment(e1::a22, 1, 9, {1}),
  };
  return d;
}
inline Instance e1_instance() { return Instance(e1_data()); }

// E2: 3 tasks, resources {r1..r4} = {0..3}.
//   task 0: a = 0 (1, {r1}), b = 1 (10, {r2})
//   task 1: c = 2 (2, {r1}), d = 3 (10, {r3})
//   task 2: e = 4 (3, {r1}), f = 5 (10, {r4})
namespace e2 {
inline constexpr AssignmentId a = 0, b = 1, c = 2, d = 3, e = 4, f = 5;
}

inline InstanceData e2_data() {
  InstanceData d;
  d.name = "e2";
  d.task_count = 3;
  d.dims = {{"r", 4}};
  d.resource_count = 4;
  d.assignments = {
      make_assignment(e2::a, 0, 1, {0}),  make_assignment(e2::b, 0, 10, {1}),
      make_assignment(e2::c, 1, 2, {0}),  make_assignment(e2::d, 1, 10, {2}),
      make_assignment(e2::e, 2, 3, {0}),  make_assignment(e2::f, 2, 10, {3}),
  };
  return d;
}
inline Instance e2_instance() { return Instance(e2_data()); }

struct RandomInstanceConfig {
  int max_tasks = 10;
  int max_options = 6;
  std::uint64_t max_product = 1'000'000;
  int max_cost = 30;
  double capacity_probability = 0.3;
};

/// Seeded random GSPP instance with |T| <= max_tasks, |Omega_i| <=
/// max_options and product of option counts <= max_product.
inline InstanceData random_instance_data(std::uint64_t seed,
                                         const RandomInstanceConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  InstanceData d;
  d.name = "rand" + std::to_string(seed);
  d.task_count = uniform(1, cfg.max_tasks);
  const int resources = uniform(2, 3 * d.task_count + 2);
  d.resource_count = static_cast<ResourceId>(resources);
  d.dims = {{"r", static_cast<std::uint32_t>(resources)}};
  if (std::bernoulli_distribution(cfg.capacity_probability)(rng)) {
    const int caps = uniform(1, 3);
    for (int c = 0; c < caps; ++c) {
      d.capacities.push_back(
          {static_cast<ResourceId>(c), static_cast<std::int64_t>(uniform(2, 5))});
    }
  }
  std::vector<int> counts(static_cast<std::size_t>(d.task_count));
  std::uint64_t product = 1;
  for (auto& c : counts) {
    c = uniform(1, cfg.max_options);
    while (c > 1 && product * static_cast<std::uint64_t>(c) > cfg.max_product) {
      --c;
    }
    product *= static_cast<std::uint64_t>(c);
  }
  AssignmentId next = 0;
  for (TaskId t = 0; t < d.task_count; ++t) {
    for (int k = 0; k < counts[static_cast<std::size_t>(t)]; ++k) {
      Assignment a;
      a.id = next++;
      a.task = t;
      a.cost = uniform(0, cfg.max_cost);
      const int fp = uniform(0, 3);
      for (int r = 0; r < fp; ++r) {
        a.footprint.push_back(static_cast<ResourceId>(uniform(0, resources - 1)));
      }
      for (const auto& cap : d.capacities) {
        if (uniform(0, 1)) {
          a.cap_usage.push_back(
              {cap.id, static_cast<std::int64_t>(uniform(0, static_cast<int>(cap.capacity)))});
        }
      }
      d.assignments.push_back(std::move(a));
    }
  }
  return d;
}

inline Instance random_instance(std::uint64_t seed,
                                const RandomInstanceConfig& cfg = {}) {
  return Instance(random_instance_data(seed, cfg));
}

/// Random simple graph, n in [0, max_n], edge density and weights random.
inline WeightedGraph random_graph(std::uint64_t seed, int max_n = 12,
                                  Cost max_weight = 20) {
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(0, max_n)(rng);
  const double density = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (std::bernoulli_distribution(density)(rng)) {
        g.add_edge(u, v, std::uniform_int_distribution<Cost>(0, max_weight)(rng));
      }
    }
  }
  return g;
}

}  // namespace gspp::testing

#endif  // GSPP_TESTS_FIXTURES_HPP
