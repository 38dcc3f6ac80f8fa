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

#ifndef THZ_SIMULATOR_H_
#define THZ_SIMULATOR_H_

// Discrete-event Monte-Carlo check of the reliability model. Jobs arrive as a
// Poisson stream and are offloaded with probability beta; local jobs queue at
// an M/M/1 CPU, offloaded jobs at an M/M/1 link and then an M/M/1 edge server.
// Waiting times follow the Lindley recursion, so no event list is needed.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "thz/optimizer.h"
#include "thz/reliability.h"

namespace thz::simulator {

enum class SimMode {
  kIsolated,    // each user has a private edge server (the analytic model)
  kSharedEdge,  // all offloaded jobs share one edge queue
};

struct SimConfig {
  std::uint64_t n_jobs = 1'000'000;  // measured jobs per user
  std::uint64_t warmup = 10'000;     // discarded leading jobs per user
  std::uint64_t seed = 1;
  SimMode mode = SimMode::kIsolated;
  unsigned threads = 0;  // 0 = default_thread_count()

  // Requires n_jobs > 0 and n_jobs >= 10 * warmup.
  void validate() const;
};

struct SimRow {
  std::size_t user_id = 0;
  double empirical_reliability = 0.0;
  // 3 sigma binomial radius using the batch-means effective sample size.
  double ci_radius = 0.0;
  double analytic_reliability = 0.0;
  double delta = 0.0;  // empirical - analytic
  std::uint64_t samples = 0;
  double effective_samples = 0.0;

  bool within_ci() const;
};

struct SimReport {
  SimMode mode = SimMode::kIsolated;
  std::vector<SimRow> users;

  bool all_within_ci() const;
};

// Random phases; each (seed, user, phase) pair owns an independent stream.
enum class Phase : std::uint32_t {
  kArrival = 0,
  kRouting = 1,
  kLocalService = 2,
  kTransmitSize = 3,
  kEdgeService = 4,
};

// Deterministic exponential / uniform variates built on mt19937_64.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t user, Phase phase);

  double uniform();  // in (0, 1)
  // Exp(rate); +inf when rate == 0.
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
};

// One job as it leaves the local CPU or the transmission queue.
struct Job {
  std::uint64_t index;
  double arrival_s;
  bool offloaded;
  // Time since the previous offloaded job arrived (+inf for the first).
  double offload_gap_s;
  double local_sojourn_s;     // valid when !offloaded
  double transmit_sojourn_s;  // valid when offloaded
  double edge_service_s;      // drawn for every job
};

// Generates a user's job stream in arrival order, running the local and
// transmission queues. The edge stage is left to the caller so that it can
// be private or shared.
class UserTrace {
 public:
  UserTrace(const reliability::UserProfile& user,
            const reliability::TaskProfile& task,
            const reliability::EdgeProfile& edge, double beta,
            double rate_bps, std::uint64_t seed, std::uint64_t user_id);

  Job next();

 private:
  double lambda_;
  double beta_;
  double mu_local_;
  double mu_transmit_;
  double mu_edge_;
  Stream arrivals_;
  Stream routing_;
  Stream local_service_;
  Stream transmit_size_;
  Stream edge_service_;
  std::uint64_t index_ = 0;
  double clock_ = 0.0;
  double local_gap_ = std::numeric_limits<double>::infinity();
  double local_wait_ = 0.0;
  double local_last_service_ = 0.0;
  double transmit_gap_ = std::numeric_limits<double>::infinity();
  double transmit_wait_ = 0.0;
  double transmit_last_service_ = 0.0;
};

// Fraction of post-warmup jobs of an M/M/1 FIFO queue whose sojourn time is
// at most `delay_s`. Throws StabilityError when lambda >= mu.
double simulate_mm1_sojourn(double lambda, double mu, double delay_s,
                            const SimConfig& cfg);

// One user with a private edge server. Mode in cfg is ignored.
SimRow simulate_user(const reliability::UserProfile& user,
                     const reliability::TaskProfile& task,
                     const reliability::EdgeProfile& edge, double beta,
                     double rate_bps, const reliability::QosTarget& qos,
                     const SimConfig& cfg, std::size_t user_id = 0);

// Simulates every planned (non-infeasible) user of a plan.
SimReport simulate_system(const optimizer::Plan& plan,
                          const optimizer::Scenario& scenario,
                          const SimConfig& cfg);

// Same, with beta overridden to `beta` for every planned user while keeping
// the planned rates.
SimReport simulate_system_with_beta(const optimizer::Plan& plan,
                                    const optimizer::Scenario& scenario,
                                    const SimConfig& cfg, double beta);

}  // namespace thz::simulator

#endif  // THZ_SIMULATOR_H_
