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

#include "thz/simulator.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <string>
#include <tuple>

#include "thz/errors.h"
#include "thz/parallel.h"

namespace thz::simulator {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kBatches = 100;

// Success counter with batch means, so that autocorrelated sojourn times
// widen the confidence radius instead of silently narrowing it.
class HitCounter {
 public:
  explicit HitCounter(std::uint64_t expected)
      : batch_size_(std::max<std::uint64_t>(1, expected / kBatches)) {}

  void add(bool hit) {
    ++n_;
    if (hit) {
      ++hits_;
      ++batch_hits_;
    }
    if (++batch_fill_ == batch_size_) {
      batch_means_.push_back(static_cast<double>(batch_hits_) / batch_size_);
      batch_fill_ = 0;
      batch_hits_ = 0;
    }
  }

  SimRow finish(double analytic) const {
    SimRow row;
    row.samples = n_;
    row.analytic_reliability = analytic;
    if (n_ == 0) {
      row.empirical_reliability = 0.0;
      row.delta = -analytic;
      return row;
    }
    const double n = static_cast<double>(n_);
    const double p = static_cast<double>(hits_) / n;
    const double binomial_var = p * (1.0 - p) / n;
    double inflation = 1.0;
    if (binomial_var > 0.0 && batch_means_.size() >= 10) {
      const double nb = static_cast<double>(batch_means_.size());
      double mean = 0.0;
      for (double m : batch_means_) mean += m;
      mean /= nb;
      double ss = 0.0;
      for (double m : batch_means_) ss += (m - mean) * (m - mean);
      const double batch_var = ss / (nb - 1.0) / nb;
      inflation = std::max(1.0, batch_var / binomial_var);
    }
    row.empirical_reliability = p;
    row.effective_samples = n / inflation;
    row.ci_radius = 3.0 * std::sqrt(p * (1.0 - p) / row.effective_samples);
    row.delta = p - analytic;
    return row;
  }

 private:
  std::uint64_t batch_size_;
  std::uint64_t n_ = 0;
  std::uint64_t hits_ = 0;
  std::uint64_t batch_fill_ = 0;
  std::uint64_t batch_hits_ = 0;
  std::vector<double> batch_means_;
};

// FIFO server fed in arrival order; returns sojourn times.
class LindleyQueue {
 public:
  double serve(double gap_s, double service_s) {
    wait_ = std::max(0.0, wait_ + last_service_ - gap_s);
    last_service_ = service_s;
    return wait_ + service_s;
  }

 private:
  double wait_ = 0.0;
  double last_service_ = 0.0;
};

void check_stability(const reliability::UserProfile& user,
                     const reliability::TaskProfile& task,
                     const reliability::EdgeProfile& edge, double beta,
                     double rate_bps, bool private_edge) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("simulate: beta must lie in [0, 1]");
  }
  const double local = (1.0 - beta) * user.arrival_rate;
  if (local > 0.0 && local >= user.local_service_rate(task)) {
    throw StabilityError("simulate: local queue unstable");
  }
  const double offered = beta * user.arrival_rate;
  if (offered > 0.0 && offered >= rate_bps / task.input_bits) {
    throw StabilityError("simulate: transmission queue unstable");
  }
  if (private_edge && offered > 0.0 && offered >= edge.service_rate(task)) {
    throw StabilityError("simulate: edge queue unstable");
  }
}

double analytic_reliability(const reliability::UserProfile& user,
                            const reliability::TaskProfile& task,
                            const reliability::EdgeProfile& edge, double beta,
                            double rate_bps, double delay_s) {
  return reliability::system_reliability(user, task, edge, beta, rate_bps,
                                         delay_s);
}

struct Planned {
  std::size_t user_id;
  double beta;
  double rate_bps;
};

std::vector<Planned> planned_users(const optimizer::Plan& plan,
                                   const std::optional<double>& beta) {
  std::vector<Planned> out;
  for (std::size_t i = 0; i < plan.users.size(); ++i) {
    const auto& row = plan.users[i];
    if (row.status == optimizer::UserStatus::kInfeasible) continue;
    if (beta && row.status == optimizer::UserStatus::kUnconstrained) continue;
    out.push_back({i, beta.value_or(row.beta_star), row.rate_threshold_bps});
  }
  return out;
}

SimReport simulate_shared_edge(const std::vector<Planned>& users,
                               const optimizer::Scenario& s,
                               const SimConfig& cfg) {
  const std::uint64_t total = cfg.warmup + cfg.n_jobs;
  double load = 0.0;
  for (const auto& p : users) {
    check_stability(s.users[p.user_id], s.task, s.edge, p.beta, p.rate_bps,
                    false);
    load += p.beta * s.users[p.user_id].arrival_rate;
  }
  if (!(load < s.edge.service_rate(s.task))) {
    throw StabilityError(
        "shared edge: aggregate offloaded load reaches the edge service rate");
  }

  // Measure only up to the time the fastest stream runs out, so every user
  // sees the full aggregate load.
  double horizon = kInf;
  for (const auto& p : users) {
    const double lambda = s.users[p.user_id].arrival_rate;
    if (lambda <= 0.0) continue;
    Stream arrivals(cfg.seed, p.user_id, Phase::kArrival);
    double t = 0.0;
    for (std::uint64_t i = 0; i < total; ++i) t += arrivals.exponential(lambda);
    horizon = std::min(horizon, t);
  }

  struct Head {
    Job job;
    bool valid = false;
  };
  std::vector<UserTrace> traces;
  std::vector<HitCounter> counters;
  std::vector<Head> heads(users.size());
  traces.reserve(users.size());
  counters.reserve(users.size());
  for (const auto& p : users) {
    traces.emplace_back(s.users[p.user_id], s.task, s.edge, p.beta,
                        p.rate_bps, cfg.seed, p.user_id);
    counters.emplace_back(cfg.n_jobs);
  }
  auto measured = [&](const Job& j) {
    return j.index >= cfg.warmup && j.arrival_s <= horizon;
  };
  // Pulls jobs until the next offloaded one, scoring local jobs on the way.
  auto advance = [&](std::size_t k) {
    heads[k].valid = false;
    while (true) {
      const Job j = traces[k].next();
      if (j.index >= total) return;
      if (!j.offloaded) {
        if (measured(j)) counters[k].add(j.local_sojourn_s <= s.qos.delay_s);
        continue;
      }
      heads[k] = {j, true};
      return;
    }
  };

  using Entry = std::tuple<double, std::size_t>;  // edge arrival, slot
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t k = 0; k < users.size(); ++k) {
    advance(k);
    if (heads[k].valid) {
      ready.emplace(heads[k].job.arrival_s + heads[k].job.transmit_sojourn_s,
                    k);
    }
  }
  LindleyQueue edge_queue;
  double last_edge_arrival = -kInf;
  while (!ready.empty()) {
    const auto [t_edge, k] = ready.top();
    ready.pop();
    const Job j = heads[k].job;
    const double gap = last_edge_arrival == -kInf ? kInf
                                                  : t_edge - last_edge_arrival;
    last_edge_arrival = t_edge;
    const double t2 = edge_queue.serve(gap, j.edge_service_s);
    if (measured(j)) {
      counters[k].add(j.transmit_sojourn_s + t2 <= s.qos.delay_s);
    }
    advance(k);
    if (heads[k].valid) {
      ready.emplace(heads[k].job.arrival_s + heads[k].job.transmit_sojourn_s,
                    k);
    }
  }

  SimReport report;
  report.mode = SimMode::kSharedEdge;
  for (std::size_t k = 0; k < users.size(); ++k) {
    const auto& p = users[k];
    SimRow row = counters[k].finish(
        analytic_reliability(s.users[p.user_id], s.task, s.edge, p.beta,
                             p.rate_bps, s.qos.delay_s));
    row.user_id = p.user_id;
    report.users.push_back(row);
  }
  return report;
}

SimReport simulate_planned(const std::vector<Planned>& users,
                           const optimizer::Scenario& scenario,
                           const SimConfig& cfg) {
  cfg.validate();
  if (cfg.mode == SimMode::kSharedEdge) {
    return simulate_shared_edge(users, scenario, cfg);
  }
  SimReport report;
  report.mode = SimMode::kIsolated;
  report.users.resize(users.size());
  parallel_for(
      users.size(),
      [&](std::size_t k) {
        const auto& p = users[k];
        report.users[k] =
            simulate_user(scenario.users[p.user_id], scenario.task,
                          scenario.edge, p.beta, p.rate_bps, scenario.qos, cfg,
                          p.user_id);
      },
      cfg.threads);
  return report;
}

}  // namespace

void SimConfig::validate() const {
  if (n_jobs == 0) throw ValidationError("sim: n_jobs must be > 0");
  if (n_jobs < 10 * warmup) {
    throw ValidationError("sim: n_jobs must be at least 10 x warmup");
  }
}

bool SimRow::within_ci() const { return std::abs(delta) <= ci_radius; }

bool SimReport::all_within_ci() const {
  return std::all_of(users.begin(), users.end(),
                     [](const SimRow& r) { return r.within_ci(); });
}

Stream::Stream(std::uint64_t seed, std::uint64_t user, Phase phase) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(user),
                    static_cast<std::uint32_t>(user >> 32),
                    static_cast<std::uint32_t>(phase)};
  engine_.seed(seq);
}

double Stream::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::exponential(double rate) {
  const double u = uniform();
  if (rate <= 0.0) return kInf;
  return -std::log(u) / rate;
}

UserTrace::UserTrace(const reliability::UserProfile& user,
                     const reliability::TaskProfile& task,
                     const reliability::EdgeProfile& edge, double beta,
                     double rate_bps, std::uint64_t seed, std::uint64_t user_id)
    : lambda_(user.arrival_rate),
      beta_(beta),
      mu_local_(user.local_service_rate(task)),
      mu_transmit_(rate_bps / task.input_bits),
      mu_edge_(edge.service_rate(task)),
      arrivals_(seed, user_id, Phase::kArrival),
      routing_(seed, user_id, Phase::kRouting),
      local_service_(seed, user_id, Phase::kLocalService),
      transmit_size_(seed, user_id, Phase::kTransmitSize),
      edge_service_(seed, user_id, Phase::kEdgeService) {}

Job UserTrace::next() {
  const double gap = arrivals_.exponential(lambda_);
  clock_ += gap;
  Job job{};
  job.index = index_++;
  job.arrival_s = clock_;
  job.offloaded = routing_.uniform() < beta_;
  // Every phase draws once per job so streams stay aligned across beta.
  const double local_service = local_service_.exponential(mu_local_);
  const double transmit_service = transmit_size_.exponential(mu_transmit_);
  job.edge_service_s = edge_service_.exponential(mu_edge_);
  local_gap_ += gap;
  transmit_gap_ += gap;
  if (job.offloaded) {
    job.offload_gap_s = transmit_gap_;
    transmit_wait_ =
        std::max(0.0, transmit_wait_ + transmit_last_service_ - transmit_gap_);
    transmit_last_service_ = transmit_service;
    transmit_gap_ = 0.0;
    job.transmit_sojourn_s = transmit_wait_ + transmit_service;
  } else {
    job.offload_gap_s = kInf;
    local_wait_ = std::max(0.0, local_wait_ + local_last_service_ - local_gap_);
    local_last_service_ = local_service;
    local_gap_ = 0.0;
    job.local_sojourn_s = local_wait_ + local_service;
  }
  return job;
}

double simulate_mm1_sojourn(double lambda, double mu, double delay_s,
                            const SimConfig& cfg) {
  cfg.validate();
  if (!(lambda >= 0.0) || !(mu > 0.0) || lambda >= mu) {
    throw StabilityError("simulate_mm1_sojourn: need 0 <= lambda < mu");
  }
  Stream arrivals(cfg.seed, 0, Phase::kArrival);
  Stream services(cfg.seed, 0, Phase::kLocalService);
  LindleyQueue queue;
  std::uint64_t hits = 0;
  double gap = kInf;
  for (std::uint64_t i = 0; i < cfg.warmup + cfg.n_jobs; ++i) {
    const double sojourn = queue.serve(gap, services.exponential(mu));
    if (i >= cfg.warmup && sojourn <= delay_s) ++hits;
    gap = arrivals.exponential(lambda);
  }
  return static_cast<double>(hits) / static_cast<double>(cfg.n_jobs);
}

SimRow simulate_user(const reliability::UserProfile& user,
                     const reliability::TaskProfile& task,
                     const reliability::EdgeProfile& edge, double beta,
                     double rate_bps, const reliability::QosTarget& qos,
                     const SimConfig& cfg, std::size_t user_id) {
  cfg.validate();
  check_stability(user, task, edge, beta, rate_bps, true);
  UserTrace trace(user, task, edge, beta, rate_bps, cfg.seed, user_id);
  HitCounter counter(cfg.n_jobs);
  LindleyQueue edge_queue;
  double last_transmit = 0.0;
  const std::uint64_t total = cfg.warmup + cfg.n_jobs;
  for (std::uint64_t i = 0; i < total; ++i) {
    const Job j = trace.next();
    double sojourn;
    if (j.offloaded) {
      // Edge inter-arrival = arrival gap + change in transmission sojourn.
      const double gap = j.offload_gap_s + (j.transmit_sojourn_s - last_transmit);
      last_transmit = j.transmit_sojourn_s;
      sojourn = j.transmit_sojourn_s + edge_queue.serve(gap, j.edge_service_s);
    } else {
      sojourn = j.local_sojourn_s;
    }
    if (i >= cfg.warmup) counter.add(sojourn <= qos.delay_s);
  }
  SimRow row = counter.finish(
      analytic_reliability(user, task, edge, beta, rate_bps, qos.delay_s));
  row.user_id = user_id;
  return row;
}

SimReport simulate_system(const optimizer::Plan& plan,
                          const optimizer::Scenario& scenario,
                          const SimConfig& cfg) {
  return simulate_planned(planned_users(plan, std::nullopt), scenario, cfg);
}

SimReport simulate_system_with_beta(const optimizer::Plan& plan,
                                    const optimizer::Scenario& scenario,
                                    const SimConfig& cfg, double beta) {
  return simulate_planned(planned_users(plan, beta), scenario, cfg);
}

}  // namespace thz::simulator
