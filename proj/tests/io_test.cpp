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

#include "gspp/io.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "gspp/report.hpp"
#include "gtest/gtest.h"

namespace gspp {
namespace {

std::string Write(const Instance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

Instance Read(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

TEST(InstanceFormat, E1Text) {
  EXPECT_EQ(Write(testing::e1_instance()),
            "gspp 1\n"
            "name e1\n"
            "application generic\n"
            "decimals 0\n"
            "tasks 2\n"
            "dims 1 r:2\n"
            "resources 2\n"
            "capacities 0\n"
            "assignments 4\n"
            "a 0 0 5 1 0 0\n"
            "a 1 0 8 1 1 0\n"
            "a 2 1 4 1 0 0\n"
            "a 3 1 9 1 1 0\n"
            "end\n");
}

TEST(InstanceFormat, RunsAndCapacities) {
  InstanceData d;
  d.name = "crane pair, v2";
  d.application = "bacap";
  d.decimals = 2;
  d.task_count = 2;
  d.dims = {{"time", 3}, {"quay", 4}};
  d.resource_count = 12;
  d.capacities = {{0, 5}, {1, 4}};
  d.assignments = {testing::make_assignment(7, 0, 1234, {5, 1, 2, 3, 9}, {{1, 2}, {0, 3}}),
                   testing::make_assignment(3, 1, 5, {0})};
  const Instance inst(d);
  ASSERT_TRUE(inst.valid());
  const std::string text = Write(inst);
  EXPECT_NE(text.find("a 7 0 12.34 3 1-3 5 9 2 0:3 1:2\n"), std::string::npos);
  EXPECT_NE(text.find("dims 2 time:3 quay:4\n"), std::string::npos);
  EXPECT_NE(text.find("capacities 2 5 4\n"), std::string::npos);
  const Instance back = Read(text);
  EXPECT_EQ(back.data(), inst.data());
  EXPECT_EQ(Write(back), text);
}

TEST(InstanceFormat, RandomRoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    InstanceData d = testing::random_instance_data(seed);
    d.decimals = static_cast<int>(seed % 4);
    const Instance inst(d);
    const std::string text = Write(inst);
    const Instance back = Read(text);
    ASSERT_EQ(back.data(), inst.data()) << "seed " << seed;
    ASSERT_EQ(Write(back), text);
  }
}

TEST(InstanceFormat, CommentsAndBlankLinesAreSkipped) {
  std::string text = Write(testing::e2_instance());
  text.insert(0, "# generated\n\n");
  text.insert(text.find("tasks"), "# three tasks\n");
  EXPECT_EQ(Read(text).data(), testing::e2_instance().data());
}

TEST(InstanceFormat, ErrorsCarryLineNumbers) {
  const std::string good = Write(testing::e1_instance());
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      Read(text);
      ADD_FAILURE() << "no error for " << needle;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_error("gspp 2\n", "version");
  std::string bad_cost = good;
  bad_cost.replace(bad_cost.find("a 1 0 8"), 7, "a 1 0 x");
  expect_error(bad_cost, "line 11");
  std::string truncated = good.substr(0, good.find("end"));
  expect_error(truncated, "end of file");
  std::string extra = good;
  extra.replace(extra.find("tasks 2"), 7, "tasks 2 3");
  expect_error(extra, "trailing");
  std::string run = good;
  run.replace(run.find("a 0 0 5 1 0 0"), 13, "a 0 0 5 1 3-1 0");
  expect_error(run, "descending");
}

TEST(InstanceFormat, MissingFile) {
  EXPECT_THROW(read_instance_file("/nonexistent/x.gspp"), IoError);
}

TEST(SolutionFormat, RoundTrip) {
  SolutionFile f;
  f.instance = "e2";
  f.status = "optimal";
  f.decimals = 1;
  f.solution = Solution{{0, 3, 5}, 210, true};
  std::ostringstream os;
  write_solution(os, f);
  EXPECT_EQ(os.str(),
            "gspp-solution 1\ninstance e2\nstatus optimal\ndecimals 1\n"
            "feasible 1\ncost 21.0\nchoices 3\nc 0 0\nc 1 3\nc 2 5\nend\n");
  std::istringstream in(os.str());
  EXPECT_EQ(read_solution(in), f);
}

TEST(SolutionFormat, NoSolution) {
  SolutionFile f;
  f.instance = "x";
  f.status = "infeasible";
  f.solution = Solution{{}, kInfinity, false};
  std::ostringstream os;
  write_solution(os, f);
  std::istringstream in(os.str());
  EXPECT_EQ(read_solution(in), f);
}

TEST(Csv, QuoteAndSplit) {
  EXPECT_EQ(csv::quote("plain"), "plain");
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::split("x,\"a,b\",,\"q\"\"\""),
            (std::vector<std::string>{"x", "a,b", "", "q\""}));
  EXPECT_THROW(csv::split("\"open"), ParseError);
}

TEST(Csv, DoublesRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(rng) / 7.0;
    EXPECT_EQ(csv::parse_double(csv::format_double(v)), v);
  }
  EXPECT_TRUE(std::isinf(csv::parse_double(csv::format_double(
      std::numeric_limits<double>::infinity()))));
  EXPECT_EQ(csv::format_double(0.1), "0.1");
}

TEST(BoundsCsv, E1Row) {
  BoundReport r = compute_bounds(testing::e1_instance());
  r.lb1_seconds = 0;
  r.lb2_seconds = 0;
  EXPECT_EQ(to_csv_row(r), "e1,2,4,0,9,12,12,1,1,0,0");
  const BoundReport back = parse_bounds_row(to_csv_row(r));
  EXPECT_EQ(back.trivial, 9);
  EXPECT_EQ(back.lb1, 12);
  EXPECT_EQ(back.lb2, 12);
}

TEST(RunCsv, LosslessRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    RunReport r;
    r.instance = i % 3 == 0 ? "bacap,\"odd\" name" : "inst" + std::to_string(i);
    r.seed = rng();
    r.mode = "matheuristic";
    r.sigma = static_cast<double>(rng() % 11) / 10.0;
    r.mu = static_cast<int>(rng() % 3000);
    r.tasks = static_cast<int>(rng() % 50);
    r.assignments = rng() % 100000;
    r.decimals = static_cast<int>(rng() % 4);
    r.trivial = static_cast<Cost>(rng() % 1000);
    r.lb1 = r.trivial + static_cast<Cost>(rng() % 100);
    r.lb2 = r.lb1 + static_cast<Cost>(rng() % 100);
    r.z = i % 7 == 0 ? kInfinity : r.lb2 + static_cast<Cost>(rng() % 100);
    if (i % 2 == 0) r.z_ref = r.lb2;
    r.gap_percent = static_cast<double>(rng() % 100000) / 997.0;
    r.gap_basis = i % 2 == 0 ? "opt" : "lb2";
    r.selected_percent = static_cast<double>(rng() % 10001) / 100.0;
    r.rank_seconds = static_cast<double>(rng() % 1000000) * 1e-6;
    r.total_seconds = r.rank_seconds * 3;
    r.nodes = rng() % 100000;
    r.status = "subset-optimal";
    ASSERT_EQ(parse_run_row(to_csv_row(r)), r);
  }
}

TEST(RunCsv, HeaderMatchesFieldCount) {
  EXPECT_EQ(csv::split(kRunHeader).size(), csv::split(to_csv_row(RunReport{})).size());
  EXPECT_EQ(csv::split(kBoundsHeader).size(),
            csv::split(to_csv_row(BoundReport{})).size());
  EXPECT_THROW(parse_run_row("a,b"), ParseError);
}

}  // namespace
}  // namespace gspp
