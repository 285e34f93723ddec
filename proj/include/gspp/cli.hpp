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

// Command-line front end. run() is the whole program; the gspp executable
// only forwards argv. Exit codes: 0 success, 1 infeasible or no solution,
// 2 usage or input error.

#ifndef GSPP_CLI_HPP
#define GSPP_CLI_HPP

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gspp/apps/bacap.hpp"
#include "gspp/apps/crew.hpp"
#include "gspp/apps/scheduling.hpp"
#include "gspp/exact.hpp"
#include "gspp/io.hpp"
#include "gspp/matheuristic.hpp"
#include "gspp/reduction.hpp"
#include "gspp/relaxation.hpp"
#include "gspp/report.hpp"

namespace gspp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSolution = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

namespace fs = std::filesystem;

/// Writes through `fn` to `path`, or to `fallback` when path is empty or "-".
inline void emit(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream f = gspp::detail::open_output(path);
  fn(f);
  f.flush();
  if (!f) throw IoError("cannot write '" + path + "'");
}

template <class Reader>
auto read_file(const std::string& path, Reader&& reader) {
  std::ifstream f = gspp::detail::open_input(path);
  return reader(f);
}

inline TaskOrder parse_order(const std::string& s) {
  if (s == "static") return TaskOrder::kFewestOptions;
  if (s == "dynamic") return TaskOrder::kFewestCandidates;
  throw CLI::ValidationError("--order", "expected static or dynamic");
}

/// Fills the identity and bound columns of a report row.
inline RunReport base_report(const Instance& inst, std::uint64_t seed,
                             std::string mode) {
  RunReport r;
  r.instance = inst.name();
  r.seed = seed;
  r.mode = std::move(mode);
  r.tasks = inst.task_count();
  r.assignments = inst.size();
  r.decimals = inst.decimals();
  r.trivial = trivial_bound(inst);
  r.lb1 = lb1(inst);
  r.lb2 = lb2(inst);
  return r;
}

/// gap against a proven optimum when known, otherwise against LB2.
inline void set_gap(RunReport& r) {
  if (is_infinite(r.z)) {
    r.gap_basis = "none";
    r.gap_percent = std::numeric_limits<double>::infinity();
  } else if (r.z_ref) {
    r.gap_basis = "opt";
    r.gap_percent = relative_gap(r.z, *r.z_ref);
  } else {
    r.gap_basis = "lb2";
    r.gap_percent = relative_gap(r.z, r.lb2);
  }
}

inline RunReport matheuristic_report(const Instance& inst,
                                     const MatheuristicResult& m,
                                     const RankingParams& params,
                                     std::uint64_t seed, bool deterministic) {
  RunReport r = base_report(inst, seed, "matheuristic");
  r.sigma = params.sigma;
  r.mu = params.mu;
  r.z = m.ub;
  r.selected_percent = m.selected_percent;
  r.rank_seconds = deterministic ? 0.0 : m.rank_seconds;
  r.total_seconds = deterministic ? 0.0 : m.total_seconds;
  r.nodes = m.nodes;
  r.status = std::string(to_string(m.status));
  return r;
}

inline void write_rows(std::ostream& os, const std::vector<RunReport>& rows) {
  os << kRunHeader << '\n';
  for (const RunReport& r : rows) os << to_csv_row(r) << '\n';
}

inline std::vector<std::string> instance_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("'" + dir + "' is not a directory");
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".gspp") {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct SweepConfig {
  std::vector<double> sigmas{0.0, 0.1, 0.2, 0.3};
  std::vector<int> mus{500, 1000, 1500, 2000};
  double time_limit = 0;
  bool reference = true;
  double ref_time_limit = 60;
  TaskOrder ref_order = TaskOrder::kFewestOptions;
  unsigned threads = 1;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool deterministic = false;
};

/// Every (sigma, mu) configuration on one instance, sharing one ranking.
/// The reference run is seeded with the best configuration's solution.
inline std::vector<RunReport> sweep_instance(const Instance& inst,
                                             const SweepConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  inst.require_valid();
  const auto t0 = Clock::now();
  const std::vector<Cost> delta = rank_variables(inst, cfg.threads);
  const double rank_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();

  std::vector<RunReport> rows;
  std::optional<Solution> best;
  for (double sigma : cfg.sigmas) {
    for (int mu : cfg.mus) {
      RankingParams params;
      params.sigma = sigma;
      params.mu = mu;
      params.time_limit = cfg.time_limit;
      params.threads = cfg.threads;
      const MatheuristicResult m =
          matheuristic_from_ranking(inst, delta, rank_seconds, params);
      if (m.solution && (!best || m.solution->cost < best->cost)) best = m.solution;
      rows.push_back(matheuristic_report(inst, m, params, cfg.seed,
                                         cfg.deterministic));
    }
  }
  std::optional<Cost> optimum;
  if (cfg.reference) {
    BranchOptions b;
    b.time_limit = cfg.ref_time_limit;
    b.order = cfg.ref_order;
    if (best) b.seed = best->chosen;
    const SolveResult r = branch_and_bound(inst, b);
    if (r.status == SolveStatus::kOptimal) optimum = r.incumbent.cost;
  }
  for (RunReport& r : rows) {
    r.z_ref = optimum;
    set_gap(r);
  }
  return rows;
}

inline std::vector<RunReport> run_sweep(const std::vector<std::string>& files,
                                        const SweepConfig& cfg) {
  std::vector<std::vector<RunReport>> per_file(files.size());
  std::vector<Instance> instances;
  instances.reserve(files.size());
  for (const auto& f : files) {
    instances.push_back(read_instance_file(f));
    if (!instances.back().valid()) {
      throw ParseError(f + ": " + instances.back().validation().violations.front().message);
    }
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      try {
        per_file[i] = sweep_instance(instances[i], cfg);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs,
                                      static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::vector<RunReport> rows;
  for (auto& v : per_file) rows.insert(rows.end(), v.begin(), v.end());
  std::stable_sort(rows.begin(), rows.end(), [](const RunReport& a, const RunReport& b) {
    if (a.instance != b.instance) return a.instance < b.instance;
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return a.mu < b.mu;
  });
  return rows;
}

}  // namespace detail

/// Parses argv and runs one subcommand, writing to `out` and `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  using namespace detail;
  CLI::App app{"Generalized set partitioning: bounds, reduction, matheuristic, "
               "exact search and application generators",
               "gspp"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "gspp 1.0.0");

  std::uint64_t seed = 0;
  bool deterministic = false;
  unsigned threads = 1;
  app.add_option("--seed", seed, "Seed for generators, recorded in every row")
      ->envname("GSPP_SEED");
  app.add_flag("--deterministic", deterministic,
               "Report zero timings so repeated runs are byte-identical")
      ->envname("GSPP_DETERMINISTIC");
  app.add_option("--threads", threads, "Worker threads for probing")
      ->envname("GSPP_THREADS")
      ->check(CLI::Range(1u, 1024u));

  int code = kExitOk;
  std::function<void()> action;

  // validate
  std::string input;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", input, "Instance file")->required();
  validate->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(input);
      if (inst.valid()) {
        out << "valid " << inst.name() << " tasks=" << inst.task_count()
            << " assignments=" << inst.size()
            << " resources=" << inst.resource_count()
            << " capacities=" << inst.capacities().size() << '\n';
      } else {
        for (const auto& v : inst.validation().violations) {
          out << "invalid: " << v.message << '\n';
        }
        code = kExitNoSolution;
      }
    };
  });

  // bounds
  std::vector<std::string> inputs;
  auto* bounds = app.add_subcommand("bounds", "Trivial bound, LB1 and LB2 as CSV");
  bounds->add_option("instances", inputs, "Instance files")->required();
  bounds->callback([&] {
    action = [&] {
      out << kBoundsHeader << '\n';
      for (const auto& f : inputs) {
        const Instance inst = read_instance_file(f);
        inst.require_valid();
        BoundReport r = compute_bounds(inst);
        if (deterministic) r.lb1_seconds = r.lb2_seconds = 0;
        if (is_infinite(r.lb2)) code = kExitNoSolution;
        out << to_csv_row(r) << '\n';
      }
    };
  });

  // reduce
  std::string ub_text;
  std::string output;
  bool fixpoint = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Remove variables whose probe bound exceeds an upper bound");
  reduce_cmd->add_option("instance", input, "Instance file")->required();
  reduce_cmd->add_option("--ub", ub_text, "Upper bound (cost literal or inf)")->required();
  reduce_cmd->add_flag("--fixpoint", fixpoint, "Repeat until nothing is removed");
  reduce_cmd->add_option("-o,--output", output, "Reduced instance file (default stdout)");
  reduce_cmd->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(input);
      inst.require_valid();
      const Cost ub = parse_cost(ub_text, inst.decimals());
      ReductionOptions opts;
      opts.fixpoint = fixpoint;
      opts.threads = threads;
      try {
        const ReductionResult r = reduce(inst, ub, opts);
        emit(output, out, [&](std::ostream& os) { write_instance(os, r.reduced); });
        std::ostream& log = output.empty() || output == "-" ? err : out;
        log << "kept " << r.stats.after << " of " << r.stats.before << " ("
            << csv::format_double(r.stats.percent_kept()) << "%), passes "
            << r.stats.passes << '\n';
      } catch (const UpperBoundError& e) {
        err << "error: " << e.what() << '\n';
        code = kExitNoSolution;
      }
    };
  });

  // matheuristic
  RankingParams rank;
  std::string csv_path;
  std::string ref_text;
  auto* mh = app.add_subcommand("matheuristic", "Rank, select and solve the restricted model");
  mh->add_option("instance", input, "Instance file")->required();
  mh->add_option("--sigma", rank.sigma, "Fraction of ranked variables kept")
      ->envname("GSPP_SIGMA")
      ->check(CLI::Range(0.0, 1.0));
  mh->add_option("--mu", rank.mu, "Per-task floor of kept variables")
      ->envname("GSPP_MU")
      ->check(CLI::NonNegativeNumber);
  mh->add_option("--time-limit", rank.time_limit, "Seconds for the restricted solve, 0 = none")
      ->envname("GSPP_TIME_LIMIT");
  mh->add_option("--reference", ref_text, "Known optimum; the gap is taken against it");
  mh->add_option("-o,--output", output, "Solution file");
  mh->add_option("--csv", csv_path, "Report CSV (default stdout)");
  mh->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(input);
      inst.require_valid();
      rank.threads = threads;
      const MatheuristicResult m = matheuristic_solve(inst, rank);
      RunReport row = matheuristic_report(inst, m, rank, seed, deterministic);
      if (!ref_text.empty()) row.z_ref = parse_cost(ref_text, inst.decimals());
      set_gap(row);
      if (!output.empty()) {
        SolutionFile sf{inst.name(), std::string(to_string(m.status)),
                        inst.decimals(), m.solution.value_or(Solution{})};
        emit(output, out, [&](std::ostream& os) { write_solution(os, sf); });
      }
      emit(csv_path, out, [&](std::ostream& os) { write_rows(os, {row}); });
      if (!m.solution) code = kExitNoSolution;
    };
  });

  // solve
  BranchOptions branch;
  std::string order_text = "static";
  bool no_prune = false;
  bool seed_mh = false;
  auto* solve = app.add_subcommand("solve", "Exact branch and bound");
  solve->add_option("instance", input, "Instance file")->required();
  solve->add_option("--time-limit", branch.time_limit, "Seconds, 0 = none")
      ->envname("GSPP_TIME_LIMIT");
  solve->add_option("--node-limit", branch.node_limit, "Nodes, 0 = none");
  solve->add_option("--order", order_text, "Branching order: static or dynamic")
      ->check(CLI::IsMember({"static", "dynamic"}));
  solve->add_option("--bound-every", branch.bound_every,
                    "Depth stride of the residual matching bound, 0 = off")
      ->check(CLI::NonNegativeNumber);
  solve->add_flag("--no-prune", no_prune, "Disable bound pruning");
  solve->add_flag("--seed-matheuristic", seed_mh,
                  "Start from the matheuristic solution (default sigma and mu)");
  solve->add_option("-o,--output", output, "Solution file");
  solve->add_option("--csv", csv_path, "Report CSV (default stdout)");
  solve->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(input);
      inst.require_valid();
      branch.order = parse_order(order_text);
      branch.pruning = !no_prune;
      double rank_seconds = 0;
      if (seed_mh) {
        RankingParams p;
        p.threads = threads;
        const MatheuristicResult m = matheuristic_solve(inst, p);
        rank_seconds = m.total_seconds;
        if (m.solution) branch.seed = m.solution->chosen;
      }
      const SolveResult r = branch_and_bound(inst, branch);
      RunReport row = base_report(inst, seed, "bnb");
      row.sigma = 1;
      row.mu = 0;
      row.z = r.has_incumbent ? r.incumbent.cost : kInfinity;
      if (r.status == SolveStatus::kOptimal) row.z_ref = row.z;
      set_gap(row);
      row.rank_seconds = deterministic ? 0.0 : rank_seconds;
      row.total_seconds = deterministic ? 0.0 : rank_seconds + r.seconds;
      row.nodes = r.nodes;
      row.status = std::string(to_string(r.status));
      if (!output.empty()) {
        SolutionFile sf{inst.name(), row.status, inst.decimals(),
                        r.has_incumbent ? r.incumbent : Solution{}};
        emit(output, out, [&](std::ostream& os) { write_solution(os, sf); });
      }
      emit(csv_path, out, [&](std::ostream& os) { write_rows(os, {row}); });
      if (!r.has_incumbent) code = kExitNoSolution;
    };
  });

  // gen-sched
  std::string params_in;
  std::string params_out;
  std::string name;
  apps::SchedGenConfig sched_cfg;
  auto* gen_sched = app.add_subcommand("gen-sched", "Scheduling instance from a parameter file or a seed");
  gen_sched->add_option("--params", params_in, "Parameter file (otherwise generated from --seed)");
  gen_sched->add_option("--jobs", sched_cfg.jobs)->check(CLI::PositiveNumber);
  gen_sched->add_option("--machines", sched_cfg.machines)->check(CLI::PositiveNumber);
  gen_sched->add_option("--horizon", sched_cfg.horizon)->check(CLI::PositiveNumber);
  gen_sched->add_option("--max-base", sched_cfg.max_base)->check(CLI::PositiveNumber);
  gen_sched->add_option("--max-penalty", sched_cfg.max_penalty)->check(CLI::NonNegativeNumber);
  gen_sched->add_option("--name", name, "Instance name (default sched-<seed>)");
  gen_sched->add_option("--write-params", params_out, "Also write the parameters used");
  gen_sched->add_option("-o,--output", output, "Instance file (default stdout)");
  gen_sched->callback([&] {
    action = [&] {
      const apps::SchedParams p =
          params_in.empty() ? apps::random_sched_params(seed, sched_cfg)
                            : read_file(params_in, [](std::istream& in) {
                                return apps::read_sched_params(in);
                              });
      const Instance inst = apps::enumerate_scheduling(
          p, name.empty() ? "sched-" + std::to_string(seed) : name);
      if (!params_out.empty()) {
        emit(params_out, out, [&](std::ostream& os) { apps::write_sched_params(os, p); });
      }
      emit(output, out, [&](std::ostream& os) { write_instance(os, inst); });
      if (!inst.valid()) {
        err << "warning: " << inst.validation().violations.front().message << '\n';
        code = kExitNoSolution;
      }
    };
  });

  // gen-bacap
  apps::BacapGenConfig bacap_cfg;
  auto* gen_bacap = app.add_subcommand("gen-bacap", "Berth and crane instance from a parameter file or a seed");
  gen_bacap->add_option("--params", params_in, "Parameter file (otherwise generated from --seed)");
  gen_bacap->add_option("--vessels", bacap_cfg.vessels)->check(CLI::PositiveNumber);
  gen_bacap->add_option("--slots", bacap_cfg.slots)->check(CLI::PositiveNumber);
  gen_bacap->add_option("--positions", bacap_cfg.positions)->check(CLI::PositiveNumber);
  gen_bacap->add_option("--cranes", bacap_cfg.cranes)->check(CLI::PositiveNumber);
  gen_bacap->add_option("--arrival-spread", bacap_cfg.arrival_spread)->check(CLI::NonNegativeNumber);
  gen_bacap->add_option("--due-slack", bacap_cfg.due_slack)->check(CLI::NonNegativeNumber);
  gen_bacap->add_option("--max-wait", bacap_cfg.max_wait)->check(CLI::NonNegativeNumber);
  gen_bacap->add_option("--max-deviation", bacap_cfg.max_deviation)->check(CLI::NonNegativeNumber);
  gen_bacap->add_option("--name", name, "Instance name (default bacap-<seed>)");
  gen_bacap->add_option("--write-params", params_out, "Also write the parameters used");
  gen_bacap->add_option("-o,--output", output, "Instance file (default stdout)");
  gen_bacap->callback([&] {
    action = [&] {
      const apps::BacapParams p =
          params_in.empty() ? apps::random_bacap_params(seed, bacap_cfg)
                            : read_file(params_in, [](std::istream& in) {
                                return apps::read_bacap_params(in);
                              });
      const Instance inst = apps::enumerate_bacap(
          p, name.empty() ? "bacap-" + std::to_string(seed) : name);
      if (!params_out.empty()) {
        emit(params_out, out, [&](std::ostream& os) { apps::write_bacap_params(os, p); });
      }
      emit(output, out, [&](std::ostream& os) { write_instance(os, inst); });
      if (!inst.valid()) {
        err << "warning: " << inst.validation().violations.front().message << '\n';
        code = kExitNoSolution;
      }
    };
  });

  // crew-lb2
  std::string rule_text = "shared";
  auto* crew = app.add_subcommand("crew-lb2", "Matching bound for a crew recovery file");
  crew->add_option("instance", input, "Crew file")->required();
  crew->add_option("--rule", rule_text, "Edge charge: shared or full")
      ->check(CLI::IsMember({"shared", "full"}));
  crew->callback([&] {
    action = [&] {
      const apps::CrewInstance ci = read_file(input, [](std::istream& in) {
        return apps::read_crew_instance(in);
      });
      const apps::CrewBound b = apps::crew_lb2(ci, apps::parse_crew_edge_rule(rule_text));
      out << "instance,drivers,tasks,rule,bound,status\n";
      out << csv::join({fs::path(input).stem().string(), std::to_string(ci.drivers),
                        std::to_string(ci.tasks), rule_text,
                        format_cost(b.bound, ci.decimals),
                        std::string(apps::to_string(b.status))})
          << '\n';
      if (b.status != apps::CrewBoundStatus::kOk) code = kExitNoSolution;
    };
  });

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "Write the model in LP format");
  lp->add_option("instance", input, "Instance file")->required();
  lp->add_option("-o,--output", output, "LP file (default stdout)");
  lp->callback([&] {
    action = [&] {
      const Instance inst = read_instance_file(input);
      inst.require_valid();
      emit(output, out, [&](std::ostream& os) { export_lp(inst, os); });
    };
  });

  // sweep
  SweepConfig sweep_cfg;
  std::string dir;
  auto* sweep = app.add_subcommand("sweep", "Run a sigma x mu grid over every .gspp file in a directory");
  sweep->add_option("directory", dir, "Instance directory")->required();
  sweep->add_option("--sigma", sweep_cfg.sigmas, "Comma-separated sigma values")
      ->delimiter(',')
      ->envname("GSPP_SIGMA")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--mu", sweep_cfg.mus, "Comma-separated mu values")
      ->delimiter(',')
      ->envname("GSPP_MU")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--time-limit", sweep_cfg.time_limit,
                    "Seconds per restricted solve, 0 = none")
      ->envname("GSPP_TIME_LIMIT");
  sweep->add_option("--ref-time-limit", sweep_cfg.ref_time_limit,
                    "Seconds for the reference exact solve, 0 = none");
  sweep->add_option("--ref-order", order_text, "Reference branching order")
      ->check(CLI::IsMember({"static", "dynamic"}));
  sweep->add_flag("!--no-reference", sweep_cfg.reference,
                  "Skip the exact reference; gaps are taken against LB2");
  sweep->add_option("--jobs", sweep_cfg.jobs, "Instances solved in parallel")
      ->envname("GSPP_JOBS")
      ->check(CLI::Range(1u, 1024u));
  sweep->add_option("--csv", csv_path, "Report CSV (default stdout)");
  sweep->callback([&] {
    action = [&] {
      sweep_cfg.ref_order = parse_order(order_text);
      sweep_cfg.threads = threads;
      sweep_cfg.seed = seed;
      sweep_cfg.deterministic = deterministic;
      std::sort(sweep_cfg.sigmas.begin(), sweep_cfg.sigmas.end());
      std::sort(sweep_cfg.mus.begin(), sweep_cfg.mus.end());
      const auto rows = run_sweep(instance_files(dir), sweep_cfg);
      emit(csv_path, out, [&](std::ostream& os) { write_rows(os, rows); });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (action) action();
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}

}  // namespace gspp::cli

#endif  // GSPP_CLI_HPP
