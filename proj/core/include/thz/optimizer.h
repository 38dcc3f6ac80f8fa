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

#ifndef THZ_OPTIMIZER_H_
#define THZ_OPTIMIZER_H_

// Two-stage coverage planner. Stage one picks each user's offloading
// probability to minimize its rate threshold; stage two matches thresholds to
// carrier frequencies (ascending to ascending) and sums the resulting link
// distances.

#include <cstddef>
#include <span>
#include <vector>

#include "thz/channel.h"
#include "thz/reliability.h"

namespace thz::optimizer {

struct Scenario {
  reliability::TaskProfile task;
  std::vector<reliability::UserProfile> users;
  reliability::EdgeProfile edge;
  channel::RadioParams radio;
  channel::GaussianFit fit = channel::GaussianFit::standard();
  channel::FrequencyGrid grid;
  reliability::QosTarget qos;
  // Reported for users whose target is met without any offloading.
  double max_distance_m = 1000.0;

  // Throws ValidationError naming the first violated invariant.
  void validate() const;
};

struct OffloadChoice {
  double beta;
  double rate_threshold_bps;
  // True when local computing alone meets the target (beta = 0); the link
  // then carries no traffic and the rate threshold is zero.
  bool unconstrained;
};

inline constexpr double kBetaTolerance = 1e-8;

// Minimizes rate_threshold over beta in (max(0, 1 - mu_l/lambda), 1].
// Throws InfeasibleError when no beta reaches the target.
OffloadChoice minimize_rate_threshold(const Scenario& scenario,
                                      std::size_t user_index);

// Sorted matching: the k-th smallest threshold gets the k-th lowest grid
// frequency. Returns frequencies in input order; ties keep input order.
// Throws SizeError when the grid has fewer frequencies than thresholds.
std::vector<double> assign_frequencies(std::span<const double> thresholds_bps,
                                       const channel::FrequencyGrid& grid);

// Sum of distance(f_k, R_k).
double total_distance(std::span<const double> thresholds_bps,
                      std::span<const double> freqs_ghz,
                      const channel::RadioParams& radio,
                      const channel::GaussianFit& fit);

struct BruteForceResult {
  std::vector<double> best_assignment;
  double best_total;
  // Worst permutation of the frequencies used by best_assignment.
  std::vector<double> worst_assignment;
  double worst_total;
};

inline constexpr std::size_t kMaxBruteForceUsers = 9;

// Exhaustive search over every injective user-to-frequency map.
// Throws SizeError for more than kMaxBruteForceUsers users.
BruteForceResult brute_force_assignment(std::span<const double> thresholds_bps,
                                        const channel::FrequencyGrid& grid,
                                        const channel::RadioParams& radio,
                                        const channel::GaussianFit& fit);

enum class UserStatus { kFeasible, kInfeasible, kUnconstrained };

struct PlanRow {
  double beta_star = 0.0;
  double rate_threshold_bps = 0.0;
  double freq_ghz = 0.0;
  double dist_m = 0.0;
  UserStatus status = UserStatus::kFeasible;
};

struct Plan {
  std::vector<PlanRow> users;
  double d_star_m = 0.0;
  bool edge_stable = true;
  // False when the grid reaches above 215 GHz: sorted matching is then a
  // heuristic rather than a guaranteed optimum.
  bool sorted_matching_guaranteed = true;

  bool all_feasible() const;
  std::size_t infeasible_count() const;
};

struct PlanOptions {
  // Baseline that offloads every job (beta = 1 for all users).
  bool force_full_offload = false;
  // 0 = hardware concurrency.
  unsigned threads = 0;
};

Plan plan(const Scenario& scenario, const PlanOptions& options = {});

// Strict aggregate edge load check: sum beta_k lambda_k < mu_m.
bool check_edge_stability(const Plan& plan, const Scenario& scenario);

}  // namespace thz::optimizer

#endif  // THZ_OPTIMIZER_H_
