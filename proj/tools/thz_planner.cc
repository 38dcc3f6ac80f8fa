// Copyright 2026 The THz Planner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: plan, sweep, simulate, verify.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "thz/cli/commands.h"

namespace {

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("thz"));
  spdlog::set_pattern("%l: %v");

  CLI::App app{"THz coverage planner for offloading-assisted URLLC users"};
  app.require_subcommand(1);

  thz::cli::PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Optimize offloading and frequencies");
  plan_cmd->add_option("scenario", plan.scenario, "Scenario YAML")->required();
  plan_cmd->add_option("-o,--out", plan.out, "Output CSV ('-' for stdout)");
  plan_cmd->add_flag("--beta-one", plan.beta_one, "Offload every job (baseline)");

  thz::cli::SweepArgs sweep;
  std::string sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Plan over a parameter sweep");
  sweep_cmd->add_option("scenario", sweep.scenario, "Scenario YAML")->required();
  sweep_cmd->add_option("--axis", sweep.axis, "f_m | epsilon | theta_th | f_l")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")
      ->required();
  sweep_cmd->add_option("-o,--out", sweep.out, "Output CSV ('-' for stdout)");
  sweep_cmd->add_flag("--beta-one", sweep.beta_one, "Offload every job");

  thz::cli::SimulateArgs sim;
  std::string sim_mode = "isolated";
  std::uint64_t warmup = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo check of a plan");
  sim_cmd->add_option("scenario", sim.scenario, "Scenario YAML")->required();
  sim_cmd->add_option("--mode", sim_mode, "isolated | shared-edge")
      ->check(CLI::IsMember({"isolated", "shared-edge"}));
  sim_cmd->add_option("--jobs", sim.jobs, "Measured jobs per user");
  sim_cmd->add_option("--seed", sim.seed, "Random seed");
  auto* warmup_opt =
      sim_cmd->add_option("--warmup", warmup, "Discarded jobs per user");
  sim_cmd->add_option("-o,--out", sim.out, "Output CSV ('-' for stdout)");
  sim_cmd->add_flag("--beta-one", sim.beta_one,
                    "Offload every job at the planned rates");

  thz::cli::VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property suite");
  verify_cmd->add_option("scenario", verify.scenario, "Scenario YAML")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thz::cli::kExitInputError;
  }

  if (*plan_cmd) return thz::cli::cmd_plan(plan, std::cout, std::cerr);
  if (*sweep_cmd) {
    try {
      sweep.values = parse_values(sweep_values);
    } catch (const std::exception&) {
      std::cerr << "error: --values must be comma-separated numbers\n";
      return thz::cli::kExitInputError;
    }
    return thz::cli::cmd_sweep(sweep, std::cout, std::cerr);
  }
  if (*sim_cmd) {
    sim.mode = sim_mode == "isolated" ? thz::simulator::SimMode::kIsolated
                                      : thz::simulator::SimMode::kSharedEdge;
    if (*warmup_opt) sim.warmup = warmup;
    return thz::cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  return thz::cli::cmd_verify(verify, std::cout, std::cerr);
}
