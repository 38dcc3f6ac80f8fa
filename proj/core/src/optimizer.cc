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

#include "thz/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include <spdlog/spdlog.h>

#include "thz/errors.h"
#include "thz/numerics.h"
#include "thz/parallel.h"

namespace thz::optimizer {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBetaSearchTolerance = 1e-8;
constexpr std::uint64_t kMaxBruteForceMaps = 50'000'000;

double threshold_or_inf(const Scenario& s, const reliability::UserProfile& user,
                        double beta) {
  try {
    return reliability::rate_threshold(user, s.task, s.edge, s.qos, beta)
        .rate_bps;
  } catch (const InfeasibleError&) {
    return kInf;
  } catch (const StabilityError&) {
    return kInf;
  }
}

std::uint64_t injective_map_count(std::size_t n, std::size_t k) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count *= n - i;
    if (count > kMaxBruteForceMaps) return count;
  }
  return count;
}

// Advances `idx` (strictly increasing, values < n) to the next k-combination.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void Scenario::validate() const {
  task.validate();
  if (users.empty()) throw ValidationError("scenario: at least one user needed");
  for (std::size_t k = 0; k < users.size(); ++k) {
    try {
      users[k].validate();
    } catch (const ValidationError& e) {
      throw ValidationError("users[" + std::to_string(k) + "]: " + e.what());
    }
  }
  edge.validate();
  radio.validate();
  qos.validate();
  if (grid.size() < users.size()) {
    throw ValidationError("grid: " + std::to_string(grid.size()) +
                          " frequencies for " + std::to_string(users.size()) +
                          " users; each user needs its own frequency");
  }
  if (!(max_distance_m > 0.0) || !std::isfinite(max_distance_m)) {
    throw ValidationError("caps: max distance must be > 0");
  }
}

OffloadChoice minimize_rate_threshold(const Scenario& scenario,
                                      std::size_t user_index) {
  if (user_index >= scenario.users.size()) {
    throw DomainError("minimize_rate_threshold: user index out of range");
  }
  const auto& user = scenario.users[user_index];
  const double lambda = user.arrival_rate;
  const double mu_l = user.local_service_rate(scenario.task);

  if (lambda < mu_l) {
    const double local_only = reliability::local_reliability(
        user, scenario.task, 0.0, scenario.qos.delay_s);
    if (local_only >= scenario.qos.reliability) return {0.0, 0.0, true};
  }

  const double lo = lambda > 0.0 ? std::max(0.0, 1.0 - mu_l / lambda) : 0.0;
  auto objective = [&](double beta) {
    return threshold_or_inf(scenario, user, beta);
  };
  if (lo >= 1.0 - kBetaTolerance) {
    const double r = objective(1.0);
    if (!std::isfinite(r)) {
      throw InfeasibleError("user " + std::to_string(user_index) +
                            ": full offloading cannot reach the target");
    }
    return {1.0, r, false};
  }

  numerics::ScalarMinimum best;
  try {
    best = numerics::minimize_scalar(objective, lo + 1e-9, 1.0,
                                     kBetaSearchTolerance);
  } catch (const DomainError&) {
    throw InfeasibleError("user " + std::to_string(user_index) +
                          ": no offloading probability reaches the target");
  }
  // A zero threshold means the link carries no traffic (lambda = 0).
  return {best.x, best.value, best.value <= 0.0};
}

std::vector<double> assign_frequencies(std::span<const double> thresholds_bps,
                                       const channel::FrequencyGrid& grid) {
  if (grid.size() < thresholds_bps.size()) {
    throw SizeError("assign_frequencies: grid has " +
                    std::to_string(grid.size()) + " frequencies for " +
                    std::to_string(thresholds_bps.size()) + " users");
  }
  std::vector<std::size_t> order(thresholds_bps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return thresholds_bps[a] < thresholds_bps[b];
                   });
  const auto freqs = grid.ghz();
  std::vector<double> out(thresholds_bps.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    out[order[rank]] = freqs[rank];
  }
  return out;
}

double total_distance(std::span<const double> thresholds_bps,
                      std::span<const double> freqs_ghz,
                      const channel::RadioParams& radio,
                      const channel::GaussianFit& fit) {
  double sum = 0.0;
  for (std::size_t k = 0; k < thresholds_bps.size(); ++k) {
    sum += channel::distance(fit, radio, freqs_ghz[k], thresholds_bps[k]);
  }
  return sum;
}

BruteForceResult brute_force_assignment(std::span<const double> thresholds_bps,
                                        const channel::FrequencyGrid& grid,
                                        const channel::RadioParams& radio,
                                        const channel::GaussianFit& fit) {
  const std::size_t k = thresholds_bps.size();
  const std::size_t n = grid.size();
  if (k > kMaxBruteForceUsers) {
    throw SizeError("brute_force_assignment: " + std::to_string(k) +
                    " users exceeds the limit of 9");
  }
  if (n < k) throw SizeError("brute_force_assignment: grid smaller than K");
  if (injective_map_count(n, k) > kMaxBruteForceMaps) {
    throw SizeError("brute_force_assignment: too many assignments to enumerate");
  }
  const auto freqs = grid.ghz();

  std::vector<double> table(k * n);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t j = 0; j < n; ++j) {
      table[u * n + j] = channel::distance(fit, radio, freqs[j],
                                           thresholds_bps[u]);
    }
  }
  auto score = [&](const std::vector<std::size_t>& perm) {
    double sum = 0.0;
    for (std::size_t u = 0; u < k; ++u) sum += table[u * n + perm[u]];
    return sum;
  };

  BruteForceResult out{{}, -kInf, {}, kInf};
  std::vector<std::size_t> best_perm;
  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), 0);
  do {
    std::vector<std::size_t> perm = subset;
    do {
      const double s = score(perm);
      if (s > out.best_total) {
        out.best_total = s;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } while (next_combination(subset, n));

  std::vector<std::size_t> perm = best_perm;
  std::sort(perm.begin(), perm.end());
  std::vector<std::size_t> worst_perm = perm;
  do {
    const double s = score(perm);
    if (s < out.worst_total) {
      out.worst_total = s;
      worst_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (std::size_t u = 0; u < k; ++u) {
    out.best_assignment.push_back(freqs[best_perm[u]]);
    out.worst_assignment.push_back(freqs[worst_perm[u]]);
  }
  // Report totals the same way total_distance sums them.
  out.best_total = total_distance(thresholds_bps, out.best_assignment, radio, fit);
  out.worst_total =
      total_distance(thresholds_bps, out.worst_assignment, radio, fit);
  return out;
}

bool Plan::all_feasible() const { return infeasible_count() == 0; }

std::size_t Plan::infeasible_count() const {
  return static_cast<std::size_t>(
      std::count_if(users.begin(), users.end(), [](const PlanRow& r) {
        return r.status == UserStatus::kInfeasible;
      }));
}

Plan plan(const Scenario& scenario, const PlanOptions& options) {
  scenario.validate();
  const std::size_t k = scenario.users.size();
  Plan out;
  out.users.resize(k);

  parallel_for(
      k,
      [&](std::size_t i) {
        PlanRow& row = out.users[i];
        try {
          if (options.force_full_offload) {
            row.beta_star = 1.0;
            row.rate_threshold_bps =
                reliability::rate_threshold(scenario.users[i], scenario.task,
                                            scenario.edge, scenario.qos, 1.0)
                    .rate_bps;
            if (row.rate_threshold_bps <= 0.0) {
              row.status = UserStatus::kUnconstrained;
            }
          } else {
            const OffloadChoice c = minimize_rate_threshold(scenario, i);
            row.beta_star = c.beta;
            row.rate_threshold_bps = c.rate_threshold_bps;
            if (c.unconstrained) row.status = UserStatus::kUnconstrained;
          }
        } catch (const InfeasibleError&) {
          row = PlanRow{0.0, 0.0, 0.0, 0.0, UserStatus::kInfeasible};
        } catch (const StabilityError&) {
          row = PlanRow{0.0, 0.0, 0.0, 0.0, UserStatus::kInfeasible};
        }
      },
      options.threads);

  // Link-limited users take the lowest frequencies via sorted matching; the
  // rest (distance independent of frequency) take what is left.
  std::vector<std::size_t> linked;
  std::vector<double> thresholds;
  for (std::size_t i = 0; i < k; ++i) {
    if (out.users[i].status == UserStatus::kFeasible) {
      linked.push_back(i);
      thresholds.push_back(out.users[i].rate_threshold_bps);
    }
  }
  const auto assigned = assign_frequencies(thresholds, scenario.grid);
  const auto freqs = scenario.grid.ghz();
  std::size_t spare = linked.size();
  for (std::size_t i = 0, j = 0; i < k; ++i) {
    PlanRow& row = out.users[i];
    if (j < linked.size() && linked[j] == i) {
      row.freq_ghz = assigned[j++];
      row.dist_m = channel::distance(scenario.fit, scenario.radio,
                                     row.freq_ghz, row.rate_threshold_bps);
    } else {
      row.freq_ghz = freqs[spare++];
      row.dist_m = row.status == UserStatus::kUnconstrained
                       ? scenario.max_distance_m
                       : 0.0;
    }
    out.d_star_m += row.dist_m;
  }

  out.edge_stable = check_edge_stability(out, scenario);
  out.sorted_matching_guaranteed =
      scenario.grid.within_sorted_matching_range();
  if (!out.sorted_matching_guaranteed) {
    spdlog::warn(
        "grid extends above {} GHz: sorted frequency matching is a heuristic "
        "there",
        channel::kSortedMatchingMaxGhz);
  }
  if (!out.edge_stable) {
    spdlog::warn("aggregate offloaded load exceeds the edge service rate");
  }
  return out;
}

bool check_edge_stability(const Plan& plan, const Scenario& scenario) {
  double load = 0.0;
  for (std::size_t i = 0; i < plan.users.size(); ++i) {
    load += plan.users[i].beta_star * scenario.users[i].arrival_rate;
  }
  return load < scenario.edge.service_rate(scenario.task);
}

}  // namespace thz::optimizer
