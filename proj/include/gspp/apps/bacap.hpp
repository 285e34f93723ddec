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

// Berth allocation with quay crane assignment as a GSPP.
//
// Time slots 0 .. T-1, quay positions 0 .. L-1; resource (t, x) has id
// t * L + x. A vessel berthed at x with q cranes from slot s occupies the
// rectangle [s, s + ceil(w / q)) x [x, x + length). Each slot also has a
// crane pool of capacity K (capacitated resource t), drawn by q in every
// occupied slot, so pairs whose combined cranes exceed K in a shared slot
// are incompatible.
//
// Cost = alpha * q * dur + beta * |x - desired| + gamma * (s - arrival)
//        + delta * max(0, s + dur - due).
//
// Parameter file:
//
//   slots <T>
//   positions <L>
//   cranes <K>
//   weights <alpha> <beta> <gamma> <delta>
//   max_wait <slots>          optional, start - arrival limit
//   max_deviation <positions> optional, |x - desired| limit
//   vessel <length> <workload> <arrival> <desired> <due> <q,q,...>

#ifndef GSPP_APPS_BACAP_HPP
#define GSPP_APPS_BACAP_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "gspp/apps/params.hpp"
#include "gspp/instance.hpp"

namespace gspp::apps {

struct Vessel {
  int length = 1;
  int workload = 1;  // crane-slots
  int arrival = 0;
  int desired = 0;   // preferred leftmost position
  int due = 1;       // preferred finish (exclusive end slot)
  std::vector<int> cranes;  // allowed crane counts

  friend bool operator==(const Vessel&, const Vessel&) = default;
};

struct BacapWeights {
  Cost alpha = 1;
  Cost beta = 1;
  Cost gamma = 1;
  Cost delta = 1;
  friend bool operator==(const BacapWeights&, const BacapWeights&) = default;
};

struct BacapParams {
  int slots = 1;
  int positions = 1;
  int cranes = 1;
  BacapWeights weights;
  std::optional<int> max_wait;
  std::optional<int> max_deviation;
  std::vector<Vessel> vessels;

  void validate() const {
    if (slots < 1 || positions < 1 || cranes < 1) {
      throw ContractError("slots, positions and cranes must be positive");
    }
    if (weights.alpha < 0 || weights.beta < 0 || weights.gamma < 0 ||
        weights.delta < 0) {
      throw ContractError("cost weights must be nonnegative");
    }
    if ((max_wait && *max_wait < 0) || (max_deviation && *max_deviation < 0)) {
      throw ContractError("windows must be nonnegative");
    }
    if (vessels.empty()) throw ContractError("at least one vessel is required");
    for (std::size_t i = 0; i < vessels.size(); ++i) {
      const Vessel& v = vessels[i];
      const std::string who = "vessel " + std::to_string(i);
      if (v.length < 1 || v.length > positions) {
        throw ContractError(who + ": length must be in [1, positions]");
      }
      if (v.workload < 1) throw ContractError(who + ": workload must be positive");
      if (v.arrival < 0 || v.arrival >= slots) {
        throw ContractError(who + ": arrival outside the horizon");
      }
      if (v.desired < 0 || v.desired + v.length > positions) {
        throw ContractError(who + ": desired berth outside the quay");
      }
      if (v.due < 1) throw ContractError(who + ": due must be positive");
      if (v.cranes.empty()) throw ContractError(who + ": no crane counts");
      for (int q : v.cranes) {
        if (q < 1 || q > cranes) {
          throw ContractError(who + ": crane count outside [1, K]");
        }
      }
    }
  }

  friend bool operator==(const BacapParams&, const BacapParams&) = default;
};

inline int handling_time(int workload, int q) { return (workload + q - 1) / q; }

/// One task per vessel, one assignment per (crane count, start, berth).
/// A vessel that fits nowhere leaves its task empty, which validation
/// reports.
inline Instance enumerate_bacap(const BacapParams& p, std::string name = "bacap") {
  p.validate();
  InstanceData d;
  d.name = std::move(name);
  d.application = "bacap";
  d.task_count = static_cast<TaskId>(p.vessels.size());
  d.dims = {{"time", static_cast<std::uint32_t>(p.slots)},
            {"quay", static_cast<std::uint32_t>(p.positions)}};
  d.resource_count =
      static_cast<ResourceId>(p.slots) * static_cast<ResourceId>(p.positions);
  for (int t = 0; t < p.slots; ++t) {
    d.capacities.push_back({static_cast<ResourceId>(t), p.cranes});
  }
  const BacapWeights& w = p.weights;
  AssignmentId next = 0;
  for (std::size_t i = 0; i < p.vessels.size(); ++i) {
    const Vessel& v = p.vessels[i];
    std::vector<int> qs = v.cranes;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    for (int q : qs) {
      const int dur = handling_time(v.workload, q);
      int last_start = p.slots - dur;
      if (p.max_wait) last_start = std::min(last_start, v.arrival + *p.max_wait);
      for (int s = v.arrival; s <= last_start; ++s) {
        for (int x = 0; x + v.length <= p.positions; ++x) {
          const int dev = x > v.desired ? x - v.desired : v.desired - x;
          if (p.max_deviation && dev > *p.max_deviation) continue;
          Assignment a;
          a.id = next++;
          a.task = static_cast<TaskId>(i);
          a.cost = w.alpha * q * dur + w.beta * dev + w.gamma * (s - v.arrival) +
                   w.delta * std::max(0, s + dur - v.due);
          for (int t = s; t < s + dur; ++t) {
            for (int y = x; y < x + v.length; ++y) {
              a.footprint.push_back(static_cast<ResourceId>(t * p.positions + y));
            }
            a.cap_usage.push_back({static_cast<ResourceId>(t), q});
          }
          d.assignments.push_back(std::move(a));
        }
      }
    }
  }
  return Instance(std::move(d));
}

struct BacapGenConfig {
  int vessels = 12;
  int slots = 60;
  int positions = 30;
  int cranes = 8;
  int min_length = 4;
  int max_length = 9;
  int min_workload = 6;
  int max_workload = 16;
  int min_cranes = 2;
  int max_cranes = 4;
  int arrival_spread = 48;  // arrivals uniform in [0, arrival_spread]
  int due_slack = 4;
  std::optional<int> max_wait = 8;
  std::optional<int> max_deviation = 3;
  BacapWeights weights{1, 2, 2, 4};
};

/// Seeded vessel data; the same seed and config always give the same
/// parameters.
inline BacapParams random_bacap_params(std::uint64_t seed,
                                       const BacapGenConfig& cfg = {}) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  BacapParams p;
  p.slots = cfg.slots;
  p.positions = cfg.positions;
  p.cranes = cfg.cranes;
  p.weights = cfg.weights;
  p.max_wait = cfg.max_wait;
  p.max_deviation = cfg.max_deviation;
  const int max_q = std::min(cfg.max_cranes, cfg.cranes);
  const int min_q = std::min(cfg.min_cranes, max_q);
  for (int i = 0; i < cfg.vessels; ++i) {
    Vessel v;
    v.length = uniform(cfg.min_length, std::min(cfg.max_length, cfg.positions));
    v.workload = uniform(cfg.min_workload, cfg.max_workload);
    v.arrival = uniform(0, std::min(cfg.arrival_spread, cfg.slots - 1));
    v.desired = uniform(0, cfg.positions - v.length);
    for (int q = min_q; q <= max_q; ++q) v.cranes.push_back(q);
    const int mid = v.cranes[v.cranes.size() / 2];
    v.due = v.arrival + handling_time(v.workload, mid) + uniform(0, cfg.due_slack);
    p.vessels.push_back(std::move(v));
  }
  return p;
}

inline BacapParams read_bacap_params(std::istream& in) {
  BacapParams p;
  int required = 0;
  for (const ParamLine& l : read_param_lines(in)) {
    if (l.key == "slots") {
      l.arity(1);
      p.slots = l.as_int<int>();
      required |= 1;
    } else if (l.key == "positions") {
      l.arity(1);
      p.positions = l.as_int<int>();
      required |= 2;
    } else if (l.key == "cranes") {
      l.arity(1);
      p.cranes = l.as_int<int>();
      required |= 4;
    } else if (l.key == "weights") {
      l.arity(4);
      p.weights = {l.as_int<Cost>(0), l.as_int<Cost>(1), l.as_int<Cost>(2),
                   l.as_int<Cost>(3)};
    } else if (l.key == "max_wait") {
      l.arity(1);
      p.max_wait = l.as_int<int>();
    } else if (l.key == "max_deviation") {
      l.arity(1);
      p.max_deviation = l.as_int<int>();
    } else if (l.key == "vessel") {
      l.arity(6);
      p.vessels.push_back({l.as_int<int>(0), l.as_int<int>(1), l.as_int<int>(2),
                           l.as_int<int>(3), l.as_int<int>(4),
                           l.as_int_list<int>(5)});
    } else {
      l.fail("unknown key");
    }
  }
  if (required != 7) throw ParseError("slots, positions and cranes are required");
  try {
    p.validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
  return p;
}

inline void write_bacap_params(std::ostream& os, const BacapParams& p) {
  os << "slots " << p.slots << '\n';
  os << "positions " << p.positions << '\n';
  os << "cranes " << p.cranes << '\n';
  os << "weights " << p.weights.alpha << ' ' << p.weights.beta << ' '
     << p.weights.gamma << ' ' << p.weights.delta << '\n';
  if (p.max_wait) os << "max_wait " << *p.max_wait << '\n';
  if (p.max_deviation) os << "max_deviation " << *p.max_deviation << '\n';
  for (const Vessel& v : p.vessels) {
    os << "vessel " << v.length << ' ' << v.workload << ' ' << v.arrival << ' '
       << v.desired << ' ' << v.due << ' ' << join_list(v.cranes) << '\n';
  }
}

}  // namespace gspp::apps

#endif  // GSPP_APPS_BACAP_HPP
