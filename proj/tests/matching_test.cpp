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

#include "gspp/matching.hpp"

#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace gspp {
namespace {

void ExpectValidMatching(const WeightedGraph& g, const Matching& m) {
  std::vector<int> used(static_cast<std::size_t>(g.n), 0);
  Cost sum = 0;
  for (const Edge& e : m.edges) {
    ASSERT_EQ(used[e.u]++, 0);
    ASSERT_EQ(used[e.v]++, 0);
    bool found = false;
    for (const Edge& ge : g.edges) {
      if (std::minmax(ge.u, ge.v) == std::minmax(e.u, e.v)) {
        EXPECT_EQ(ge.weight, e.weight);
        found = true;
      }
    }
    EXPECT_TRUE(found);
    sum += e.weight;
  }
  EXPECT_EQ(sum, m.weight);
}

WeightedGraph K4OfE2() {
  // vertices: s = 0, tasks 1..3
  WeightedGraph g(4);
  g.add_edge(0, 1, 1);
  g.add_edge(0, 2, 2);
  g.add_edge(0, 3, 3);
  g.add_edge(1, 2, 11);
  g.add_edge(1, 3, 11);
  g.add_edge(2, 3, 12);
  return g;
}

TEST(MaxWeightMatching, EmptyGraph) {
  WeightedGraph g(4);
  const Matching m = max_weight_matching(g);
  EXPECT_TRUE(m.edges.empty());
  EXPECT_EQ(m.weight, 0);
}

TEST(MaxWeightMatching, Triangle) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 8);
  g.add_edge(0, 2, 7);
  g.add_edge(1, 2, 7);
  const Matching m = max_weight_matching(g);
  EXPECT_EQ(m.weight, 8);
  ASSERT_EQ(m.edges.size(), 1u);
  EXPECT_EQ(m.edges[0], (Edge{0, 1, 8}));
}

TEST(MaxWeightMatching, K4FromSecondExample) {
  const WeightedGraph g = K4OfE2();
  const Matching m = max_weight_matching(g);
  EXPECT_EQ(m.weight, 14);
  ExpectValidMatching(g, m);
  EXPECT_EQ(m.edges, (std::vector<Edge>{{0, 3, 3}, {1, 2, 11}}));
}

TEST(MaxWeightMatching, RejectsInvalidGraphs) {
  WeightedGraph loop(2);
  loop.add_edge(1, 1, 3);
  EXPECT_THROW(max_weight_matching(loop), ContractError);
  WeightedGraph parallel(2);
  parallel.add_edge(0, 1, 3);
  parallel.add_edge(1, 0, 4);
  EXPECT_THROW(max_weight_matching(parallel), ContractError);
  WeightedGraph negative(2);
  negative.add_edge(0, 1, -1);
  EXPECT_THROW(max_weight_matching(negative), ContractError);
  WeightedGraph outside(2);
  outside.add_edge(0, 2, 1);
  EXPECT_THROW(max_weight_matching(outside), ContractError);
}

// Classic blossom stress shapes (nested blossoms, blossom expansion with
// relabeling). Expected weights come from the exhaustive oracle.
TEST(MaxWeightMatching, BlossomShapesAgreeWithOracle) {
  const std::vector<std::vector<Edge>> shapes = {
      {{1, 2, 8}, {1, 3, 9}, {2, 3, 10}, {3, 4, 7}},
      {{1, 2, 8}, {1, 3, 9}, {2, 3, 10}, {3, 4, 7}, {1, 6, 5}, {4, 5, 6}},
      {{1, 2, 9}, {1, 3, 8}, {2, 3, 10}, {1, 4, 5}, {4, 5, 4}, {1, 6, 3}},
      {{1, 2, 9}, {1, 3, 8}, {2, 3, 10}, {1, 4, 5}, {4, 5, 3}, {1, 6, 4}},
      {{1, 2, 9}, {1, 3, 8}, {2, 3, 10}, {1, 4, 5}, {4, 5, 3}, {3, 6, 4}},
      {{1, 2, 9}, {1, 3, 9}, {2, 3, 10}, {2, 4, 8}, {3, 5, 8}, {4, 5, 10},
       {5, 6, 6}},
      {{1, 2, 10}, {1, 7, 10}, {2, 3, 12}, {3, 4, 20}, {3, 5, 20}, {4, 5, 25},
       {5, 6, 10}, {6, 7, 10}, {7, 8, 8}},
      {{1, 2, 8}, {1, 3, 8}, {2, 3, 10}, {2, 4, 12}, {3, 5, 12}, {4, 5, 14},
       {4, 6, 12}, {5, 7, 12}, {6, 7, 14}, {7, 8, 12}},
      {{1, 2, 23}, {1, 5, 22}, {1, 6, 15}, {2, 3, 25}, {3, 4, 22}, {4, 5, 25},
       {4, 8, 14}, {5, 7, 13}},
      {{1, 2, 19}, {1, 3, 20}, {1, 8, 8}, {2, 3, 25}, {2, 4, 18}, {3, 5, 18},
       {4, 5, 13}, {4, 7, 7}, {5, 6, 7}},
      {{1, 2, 40}, {1, 3, 40}, {2, 3, 60}, {2, 4, 55}, {3, 5, 55}, {4, 5, 50},
       {1, 8, 15}, {5, 7, 30}, {7, 6, 10}, {8, 10, 10}, {4, 9, 30}},
      {{1, 2, 45}, {1, 5, 45}, {2, 3, 50}, {3, 4, 45}, {4, 5, 50}, {1, 6, 30},
       {3, 9, 35}, {4, 8, 35}, {5, 7, 26}, {9, 10, 5}},
      {{1, 2, 45}, {1, 7, 45}, {2, 3, 50}, {3, 4, 45}, {4, 5, 95}, {4, 6, 94},
       {5, 6, 94}, {6, 7, 50}, {1, 8, 30}, {3, 11, 35}, {5, 9, 36},
       {7, 10, 26}, {11, 12, 5}},
  };
  for (const auto& shape : shapes) {
    WeightedGraph g(13);
    for (const Edge& e : shape) g.add_edge(e.u, e.v, e.weight);
    const Matching m = max_weight_matching(g);
    ExpectValidMatching(g, m);
    EXPECT_EQ(m.weight, brute_force_matching(g));
  }
}

TEST(BruteForceMatching, SmallCases) {
  WeightedGraph single(2);
  single.add_edge(0, 1, 5);
  EXPECT_EQ(brute_force_matching(single), 5);

  WeightedGraph path(3);
  path.add_edge(0, 1, 3);
  path.add_edge(1, 2, 4);
  EXPECT_EQ(brute_force_matching(path), 4);

  EXPECT_EQ(brute_force_matching(K4OfE2()), 14);
}

TEST(BruteForceMatching, RejectsLargeGraphs) {
  WeightedGraph g(15);
  EXPECT_THROW(brute_force_matching(g), SizeError);
}

TEST(MaxWeightMatching, RandomGraphsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const WeightedGraph g = testing::random_graph(seed);
    const Matching m = max_weight_matching(g);
    ExpectValidMatching(g, m);
    ASSERT_EQ(m.weight, brute_force_matching(g)) << "seed " << seed;
  }
}

TEST(MaxWeightMatching, HeavyTiesMatchOracle) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const WeightedGraph g = testing::random_graph(seed + 77, 12, 2);
    ASSERT_EQ(max_weight_matching(g).weight, brute_force_matching(g))
        << "seed " << seed;
  }
}

TEST(MaxWeightMatching, AddingAnEdgeNeverDecreasesWeight) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    WeightedGraph g = testing::random_graph(seed, 12);
    if (g.n < 2) continue;
    const Cost before = max_weight_matching(g).weight;
    // Add the first missing pair, if any.
    for (int u = 0; u < g.n; ++u) {
      for (int v = u + 1; v < g.n; ++v) {
        bool present = false;
        for (const Edge& e : g.edges) present |= (e.u == u && e.v == v);
        if (!present) {
          g.add_edge(u, v, static_cast<Cost>((seed * 7) % 23));
          EXPECT_GE(max_weight_matching(g).weight, before);
          goto next;
        }
      }
    }
  next:;
  }
}

TEST(MaxWeightMatching, ScalingWeightsScalesResult) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const WeightedGraph g = testing::random_graph(seed);
    const Cost lambda = static_cast<Cost>(seed % 9) + 2;
    WeightedGraph scaled = g;
    for (Edge& e : scaled.edges) e.weight *= lambda;
    EXPECT_EQ(max_weight_matching(scaled).weight,
              lambda * max_weight_matching(g).weight);
  }
}

TEST(MaxWeightMatching, SolverReuseIsStateless) {
  MatchingSolver solver;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const WeightedGraph g = testing::random_graph(seed);
    EXPECT_EQ(solver.max_weight(g.n, g.edges), brute_force_matching(g));
  }
}

TEST(EdgeListDump, Format) {
  WeightedGraph g(3);
  g.add_edge(0, 1, 125);
  std::ostringstream os;
  write_edge_list(os, g, 2);
  EXPECT_EQ(os.str(), "p edge 3 1\ne 0 1 1.25\n");
}

}  // namespace
}  // namespace gspp
