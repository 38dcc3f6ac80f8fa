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

#include "thz/cli/verify.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "thz/channel.h"
#include "thz/errors.h"
#include "thz/reliability.h"

namespace thz::cli {
namespace {

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return out;
}

CheckResult check_round_trip(const optimizer::Scenario& s) {
  double worst = 0.0;
  for (double f : s.grid.ghz()) {
    for (double rate : log_space(1e6, 1e12, 13)) {
      const double d = channel::distance(s.fit, s.radio, f, rate);
      const double back = channel::data_rate(s.fit, s.radio, f, d);
      worst = std::max(worst, std::abs(back - rate) / rate);
    }
  }
  return {"rate/distance round trip",
          worst <= 1e-9 ? CheckStatus::kPass : CheckStatus::kFail,
          fmt::format("max relative error {:.3g} (limit 1e-9)", worst)};
}

CheckResult check_supermodularity(const optimizer::Scenario& s) {
  if (!s.grid.within_sorted_matching_range()) {
    return {"supermodularity", CheckStatus::kSkipped,
            "grid reaches above 215 GHz; property only holds up to 215 GHz"};
  }
  constexpr int kPoints = 20;
  constexpr double kDf = 5.0;
  const double f_lo = s.grid.ghz().front();
  const double f_hi = channel::kSortedMatchingMaxGhz - kDf;
  if (!(f_lo < f_hi)) {
    return {"supermodularity", CheckStatus::kSkipped,
            "grid leaves no room below 215 GHz"};
  }
  int failures = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (double rate : log_space(1e8, 1e11, kPoints)) {
    for (int j = 0; j < kPoints; ++j) {
      const double f = f_lo + (f_hi - f_lo) * j / (kPoints - 1);
      const double gap = channel::supermodularity_gap(s.fit, s.radio, rate, f,
                                                      0.25 * rate, kDf);
      min_gap = std::min(min_gap, gap);
      if (!(gap > 0.0)) ++failures;
    }
  }
  return {"supermodularity",
          failures == 0 ? CheckStatus::kPass : CheckStatus::kFail,
          fmt::format("{} of {} rectangles non-positive, min gap {:.3g} m",
                      failures, kPoints * kPoints, min_gap)};
}

CheckResult check_thresholds(const optimizer::Scenario& s) {
  int compared = 0;
  int disagreements = 0;
  int off_target = 0;
  double worst = 0.0;
  for (const auto& user : s.users) {
    const double mu_l = user.local_service_rate(s.task);
    const double lo = user.arrival_rate > 0.0
                          ? std::max(0.0, 1.0 - mu_l / user.arrival_rate)
                          : 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double beta = lo + (1.0 - lo) * i / 100.0;
      double closed;
      double oracle;
      reliability::ThresholdSource source;
      try {
        const auto t =
            reliability::rate_threshold(user, s.task, s.edge, s.qos, beta);
        closed = t.rate_bps;
        source = t.source;
        oracle = reliability::rate_threshold_oracle(user, s.task, s.edge,
                                                    s.qos, beta);
      } catch (const Error&) {
        continue;
      }
      ++compared;
      const double rel = std::abs(closed - oracle) / oracle;
      worst = std::max(worst, rel);
      if (rel > 1e-6) ++disagreements;
      if (source != reliability::ThresholdSource::kStabilityFloor) {
        const double phi = reliability::system_reliability(
            user, s.task, s.edge, beta, closed, s.qos.delay_s);
        if (std::abs(phi - s.qos.reliability) > 1e-8) ++off_target;
      }
    }
  }
  if (compared == 0) {
    return {"threshold vs oracle", CheckStatus::kSkipped,
            "no feasible (user, beta) pair to compare"};
  }
  return {"threshold vs oracle",
          disagreements == 0 && off_target == 0 ? CheckStatus::kPass
                                                : CheckStatus::kFail,
          fmt::format("{} points, max relative gap {:.3g}, {} disagree, {} "
                      "miss the target",
                      compared, worst, disagreements, off_target)};
}

CheckResult check_assignment(const optimizer::Scenario& s) {
  const optimizer::Plan plan = optimizer::plan(s);
  std::vector<double> thresholds;
  for (const auto& row : plan.users) {
    if (row.status == optimizer::UserStatus::kFeasible) {
      thresholds.push_back(row.rate_threshold_bps);
    }
  }
  if (thresholds.empty()) {
    return {"sorted vs brute-force assignment", CheckStatus::kSkipped,
            "no link-limited users"};
  }
  if (thresholds.size() > optimizer::kMaxBruteForceUsers) {
    return {"sorted vs brute-force assignment", CheckStatus::kSkipped,
            fmt::format("{} link-limited users; exhaustive search is limited "
                        "to 9",
                        thresholds.size())};
  }
  const auto brute =
      optimizer::brute_force_assignment(thresholds, s.grid, s.radio, s.fit);
  if (!s.grid.within_sorted_matching_range()) {
    return {"sorted vs brute-force assignment", CheckStatus::kPass,
            fmt::format("grid above 215 GHz: brute-force optimum {:.12g} m "
                        "used as the reference",
                        brute.best_total)};
  }
  const auto sorted = optimizer::assign_frequencies(thresholds, s.grid);
  const double sorted_total =
      optimizer::total_distance(thresholds, sorted, s.radio, s.fit);

  // Reverse matching over the same frequencies.
  std::vector<std::size_t> order(thresholds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return thresholds[a] < thresholds[b];
  });
  std::vector<double> used(sorted);
  std::sort(used.begin(), used.end());
  std::vector<double> reverse(thresholds.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    reverse[order[rank]] = used[used.size() - 1 - rank];
  }
  const double reverse_total =
      optimizer::total_distance(thresholds, reverse, s.radio, s.fit);

  const bool best_ok =
      std::abs(sorted_total - brute.best_total) <= 1e-12 * brute.best_total;
  const bool worst_ok = std::abs(reverse_total - brute.worst_total) <=
                        1e-12 * std::abs(brute.worst_total);
  return {"sorted vs brute-force assignment",
          best_ok && worst_ok ? CheckStatus::kPass : CheckStatus::kFail,
          fmt::format("sorted {:.12g} m vs max {:.12g} m; reverse {:.12g} m "
                      "vs min {:.12g} m",
                      sorted_total, brute.best_total, reverse_total,
                      brute.worst_total)};
}

}  // namespace

std::vector<CheckResult> run_verification(const optimizer::Scenario& scenario) {
  scenario.validate();
  return {check_round_trip(scenario), check_supermodularity(scenario),
          check_thresholds(scenario), check_assignment(scenario)};
}

}  // namespace thz::cli
