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

#include "thz/cli/commands.h"

#include <algorithm>
#include <fstream>
#include <functional>

#include <fmt/format.h>

#include "thz/cli/csv.h"
#include "thz/cli/scenario_io.h"
#include "thz/cli/verify.h"
#include "thz/errors.h"

namespace thz::cli {
namespace {

// Loads the scenario and runs `body` with a CSV sink; maps input errors to
// exit code 1.
int with_scenario(const std::string& path, const std::string& out_path,
                  std::ostream& out, std::ostream& err,
                  const std::function<int(const LoadedScenario&,
                                          std::ostream&)>& body) {
  try {
    const LoadedScenario loaded = load_scenario(path);
    for (const auto& w : loaded.warnings) err << "warning: " << w << '\n';
    if (out_path == "-") return body(loaded, out);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << out_path << " for writing\n";
      return kExitInputError;
    }
    return body(loaded, file);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
  }
  return kExitInputError;
}

const char* status_name(optimizer::UserStatus status) {
  switch (status) {
    case optimizer::UserStatus::kFeasible:
      return "feasible";
    case optimizer::UserStatus::kInfeasible:
      return "infeasible";
    case optimizer::UserStatus::kUnconstrained:
      return "communication-unconstrained";
  }
  return "unknown";
}

}  // namespace

std::optional<SweepAxis> parse_sweep_axis(const std::string& name) {
  if (name == "f_m") return SweepAxis::kEdgeCpu;
  if (name == "epsilon") return SweepAxis::kDelay;
  if (name == "theta_th") return SweepAxis::kReliability;
  if (name == "f_l") return SweepAxis::kLocalCpu;
  return std::nullopt;
}

optimizer::Scenario with_axis_value(const optimizer::Scenario& scenario,
                                    SweepAxis axis, double value) {
  optimizer::Scenario s = scenario;
  switch (axis) {
    case SweepAxis::kEdgeCpu:
      s.edge.cpu_hz = value;
      break;
    case SweepAxis::kDelay:
      s.qos.delay_s = value;
      break;
    case SweepAxis::kReliability:
      s.qos.reliability = value;
      break;
    case SweepAxis::kLocalCpu:
      for (auto& u : s.users) u.cpu_hz = value;
      break;
  }
  s.validate();
  return s;
}

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err) {
  return with_scenario(
      args.scenario, args.out, out, err,
      [&](const LoadedScenario& loaded, std::ostream& sink) {
        optimizer::PlanOptions options;
        options.force_full_offload = args.beta_one;
        const optimizer::Plan plan = optimizer::plan(loaded.scenario, options);
        CsvWriter csv(sink, loaded.content_hash, std::nullopt);
        csv.row({"user_id", "beta_star", "r_th_bps", "freq_ghz", "dist_m",
                 "feasible"});
        for (std::size_t i = 0; i < plan.users.size(); ++i) {
          const auto& r = plan.users[i];
          const bool feasible = r.status != optimizer::UserStatus::kInfeasible;
          csv.row({std::to_string(i), format_number(r.beta_star),
                   format_number(r.rate_threshold_bps),
                   format_number(r.freq_ghz), format_number(r.dist_m),
                   feasible ? "1" : "0"});
          if (r.status != optimizer::UserStatus::kFeasible) {
            err << fmt::format("note: user {} is {}\n", i,
                               status_name(r.status));
          }
        }
        csv.row({"d_star_m", format_number(plan.d_star_m), "edge_stable",
                 plan.edge_stable ? "1" : "0", "", ""});
        if (!plan.edge_stable) {
          err << "warning: sum of beta*lambda reaches the edge service rate\n";
        }
        return plan.all_feasible() ? kExitOk : kExitInfeasible;
      });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const auto axis = parse_sweep_axis(args.axis);
  if (!axis) {
    err << "error: unknown sweep axis '" << args.axis
        << "' (expected f_m, epsilon, theta_th or f_l)\n";
    return kExitInputError;
  }
  if (args.values.empty()) {
    err << "error: --values needs at least one value\n";
    return kExitInputError;
  }
  return with_scenario(
      args.scenario, args.out, out, err,
      [&](const LoadedScenario& loaded, std::ostream& sink) {
        optimizer::PlanOptions options;
        options.force_full_offload = args.beta_one;
        // Validate every point before writing anything.
        std::vector<optimizer::Scenario> points;
        for (double v : args.values) {
          points.push_back(with_axis_value(loaded.scenario, *axis, v));
        }
        CsvWriter csv(sink, loaded.content_hash, std::nullopt);
        csv.row({"axis_value", "d_star_m", "n_infeasible"});
        for (std::size_t i = 0; i < points.size(); ++i) {
          const optimizer::Plan plan = optimizer::plan(points[i], options);
          csv.row({format_number(args.values[i]), format_number(plan.d_star_m),
                   std::to_string(plan.infeasible_count())});
        }
        return kExitOk;
      });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out,
                 std::ostream& err) {
  return with_scenario(
      args.scenario, args.out, out, err,
      [&](const LoadedScenario& loaded, std::ostream& sink) {
        simulator::SimConfig cfg;
        cfg.n_jobs = args.jobs;
        cfg.seed = args.seed;
        cfg.mode = args.mode;
        cfg.warmup = args.warmup.value_or(
            std::min<std::uint64_t>(10'000, args.jobs / 10));
        cfg.validate();

        const optimizer::Plan plan = optimizer::plan(loaded.scenario);
        for (std::size_t i = 0; i < plan.users.size(); ++i) {
          if (plan.users[i].status == optimizer::UserStatus::kInfeasible) {
            err << fmt::format("note: user {} is infeasible; not simulated\n",
                               i);
          }
        }
        simulator::SimReport report;
        try {
          report = args.beta_one
                       ? simulator::simulate_system_with_beta(
                             plan, loaded.scenario, cfg, 1.0)
                       : simulator::simulate_system(plan, loaded.scenario, cfg);
        } catch (const StabilityError& e) {
          err << "error: " << e.what() << '\n';
          return kExitInputError;
        }
        const char* mode =
            cfg.mode == simulator::SimMode::kIsolated ? "isolated"
                                                      : "shared-edge";
        CsvWriter csv(sink, loaded.content_hash, cfg.seed);
        csv.row({"user_id", "analytic_phi", "empirical_phi", "ci_radius",
                 "delta", "mode"});
        for (const auto& r : report.users) {
          csv.row({std::to_string(r.user_id),
                   format_number(r.analytic_reliability),
                   format_number(r.empirical_reliability),
                   format_number(r.ci_radius), format_number(r.delta), mode});
          if (!r.within_ci()) {
            err << fmt::format(
                "discrepancy: user {} empirical {:.6f} vs analytic {:.6f} "
                "(radius {:.3g})\n",
                r.user_id, r.empirical_reliability, r.analytic_reliability,
                r.ci_radius);
          }
        }
        return report.all_within_ci() ? kExitOk : kExitSimulationDiscrepancy;
      });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return with_scenario(
      args.scenario, "-", out, err,
      [&](const LoadedScenario& loaded, std::ostream& sink) {
        const auto results = run_verification(loaded.scenario);
        bool ok = true;
        sink << fmt::format("{:<34} {:<7} {}\n", "check", "status", "detail");
        for (const auto& r : results) {
          const char* status = r.status == CheckStatus::kPass   ? "PASS"
                               : r.status == CheckStatus::kFail ? "FAIL"
                                                                : "SKIP";
          if (r.status == CheckStatus::kFail) ok = false;
          sink << fmt::format("{:<34} {:<7} {}\n", r.name, status, r.detail);
        }
        return ok ? kExitOk : kExitVerificationFailure;
      });
}

}  // namespace thz::cli
