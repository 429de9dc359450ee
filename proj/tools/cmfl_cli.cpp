// Copyright 2026 The cmfl Authors
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

// Command-line front end. Every subcommand prints JSON on stdout except
// paper-examples, which prints a table.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cmfl/core.hpp"
#include "cmfl/experiment.hpp"
#include "cmfl/harness.hpp"
#include "cmfl/json_io.hpp"
#include "cmfl/mechanism.hpp"
#include "cmfl/oracle.hpp"

namespace {

void print_paper_examples() {
  std::cout << std::left << std::setw(24) << "instance" << std::setw(5) << "obj" << std::setw(7)
            << "n" << std::setw(20) << "case" << std::setw(26) << "mechanism (y1, y2)"
            << std::setw(14) << "mech cost" << std::setw(26) << "optimum (y1, y2)"
            << std::setw(14) << "opt cost"
            << "ratio\n";
  std::cout << std::setprecision(10);
  for (const cmfl::PaperExampleRow& row : cmfl::paper_examples()) {
    std::ostringstream mech;
    std::ostringstream opt;
    mech << std::setprecision(10) << '(' << row.outcome.solution.y1 << ", " << row.outcome.solution.y2 << ')';
    opt << std::setprecision(10) << '(' << row.record.optimal_solution.y1 << ", "
        << row.record.optimal_solution.y2 << ')';
    std::cout << std::setw(24) << row.name << std::setw(5) << cmfl::to_string(row.objective)
              << std::setw(7) << row.n_agents << std::setw(20) << cmfl::to_string(row.outcome.case_tag)
              << std::setw(26) << mech.str() << std::setw(14) << row.record.mechanism_cost
              << std::setw(26) << opt.str() << std::setw(14) << row.record.optimal_cost
              << row.record.ratio << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional-Median two-facility location: mechanisms, exact oracles, experiments"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string mechanism_id = "conditional-median";
  std::string objective_name = "sc";
  std::size_t iterations = 10000;
  std::uint64_t seed = 0;
  int max_agents = 12;
  int max_candidates = 8;
  std::string config_path;
  std::string out_dir = "experiment-out";

  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  run->add_option("--instance", instance_path, "Instance JSON file")->required();
  run->add_option("--mechanism", mechanism_id, "Mechanism id");

  auto* opt = app.add_subcommand("opt", "Optimal solution by exhaustive enumeration");
  opt->add_option("--instance", instance_path, "Instance JSON file")->required();
  opt->add_option("--objective", objective_name, "sc or mc")->required();

  auto* ratio = app.add_subcommand("ratio", "Approximation ratio of a mechanism on an instance");
  ratio->add_option("--instance", instance_path, "Instance JSON file")->required();
  ratio->add_option("--mechanism", mechanism_id, "Mechanism id");
  ratio->add_option("--objective", objective_name, "sc or mc")->required();

  auto* verify = app.add_subcommand("verify-sp", "Exhaustive single-agent misreport search");
  verify->add_option("--instance", instance_path, "Instance JSON file")->required();
  verify->add_option("--mechanism", mechanism_id, "Mechanism id");

  auto* examples = app.add_subcommand("paper-examples", "Ratios on the two tightness families");

  auto* search = app.add_subcommand("search", "Hill-climb toward a worst-case instance");
  search->add_option("--objective", objective_name, "sc or mc")->required();
  search->add_option("--iters", iterations, "Iterations")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "Random seed");
  search->add_option("--mechanism", mechanism_id, "Mechanism id");
  search->add_option("--max-agents", max_agents, "Largest number of agents")->check(CLI::PositiveNumber);
  search->add_option("--max-candidates", max_candidates, "Largest number of candidates")
      ->check(CLI::Range(2, 1000));

  auto* experiment = app.add_subcommand("experiment", "Batch experiment with bound checks");
  experiment->add_option("--config", config_path, "Experiment config JSON")->required();
  experiment->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const cmfl::Instance instance = cmfl::load_instance(instance_path);
      std::cout << cmfl::to_json(cmfl::run_mechanism(mechanism_id, instance)).dump(2) << '\n';
    } else if (*opt) {
      const cmfl::Instance instance = cmfl::load_instance(instance_path);
      const cmfl::Objective objective = cmfl::parse_objective(objective_name);
      std::cout << cmfl::to_json(cmfl::optimal_solution(instance, objective), objective).dump(2) << '\n';
    } else if (*ratio) {
      const cmfl::Instance instance = cmfl::load_instance(instance_path);
      const cmfl::Objective objective = cmfl::parse_objective(objective_name);
      std::cout << cmfl::to_json(cmfl::approximation_ratio(instance, mechanism_id, objective)).dump(2)
                << '\n';
    } else if (*verify) {
      const cmfl::Instance instance = cmfl::load_instance(instance_path);
      const cmfl::DeviationReport report = cmfl::verify_strategyproof(instance, mechanism_id);
      std::cout << cmfl::to_json(report).dump(2) << '\n';
      return report.strategyproof() ? 0 : 1;
    } else if (*examples) {
      print_paper_examples();
    } else if (*search) {
      cmfl::GeneratorConfig config;
      config.n_agents = {1, max_agents};
      config.n_candidates = {2, max_candidates};
      config.seed = seed;
      const cmfl::Objective objective = cmfl::parse_objective(objective_name);
      const cmfl::SearchResult result =
          cmfl::hill_climb_worst_case(config, objective, mechanism_id, iterations);
      cmfl::Json out = {{"instance", cmfl::to_json(result.instance)},
                        {"outcome", cmfl::to_json(cmfl::run_mechanism(mechanism_id, result.instance))},
                        {"record", cmfl::to_json(result.record)},
                        {"accepted_moves", result.accepted_moves}};
      std::cout << out.dump(2) << '\n';
    } else if (*experiment) {
      const cmfl::ExperimentReport report = cmfl::run_experiment(cmfl::load_experiment_config(config_path));
      cmfl::write_report(report, out_dir);
      std::cout << cmfl::to_json(report)["summary"].dump(2) << '\n';
      for (const auto& failure : report.failures) std::cerr << "FAIL " << failure << '\n';
      return report.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
