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

#ifndef THZ_CLI_COMMANDS_H_
#define THZ_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "thz/optimizer.h"
#include "thz/simulator.h"

namespace thz::cli {

// Process exit codes; stable and mutually exclusive.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInfeasible = 2,
  kExitSimulationDiscrepancy = 3,
  kExitVerificationFailure = 4,
};

enum class SweepAxis { kEdgeCpu, kDelay, kReliability, kLocalCpu };

// Accepts "f_m", "epsilon", "theta_th", "f_l".
std::optional<SweepAxis> parse_sweep_axis(const std::string& name);

// Applies one sweep value to a copy of the scenario. f_l sets every user.
optimizer::Scenario with_axis_value(const optimizer::Scenario& scenario,
                                    SweepAxis axis, double value);

struct PlanArgs {
  std::string scenario;
  std::string out = "-";  // "-" = stdout
  bool beta_one = false;
};

struct SweepArgs {
  std::string scenario;
  std::string axis;
  std::vector<double> values;
  std::string out = "-";
  bool beta_one = false;
};

struct SimulateArgs {
  std::string scenario;
  simulator::SimMode mode = simulator::SimMode::kIsolated;
  std::uint64_t jobs = 1'000'000;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> warmup;  // default min(10^4, jobs / 10)
  std::string out = "-";
  // Simulate every planned user with beta = 1 at its planned rate.
  bool beta_one = false;
};

struct VerifyArgs {
  std::string scenario;
};

// Each command writes diagnostics to `err` and, for "-", CSV to `out`.
int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace thz::cli

#endif  // THZ_CLI_COMMANDS_H_
