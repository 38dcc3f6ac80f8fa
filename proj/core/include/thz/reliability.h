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

#ifndef THZ_RELIABILITY_H_
#define THZ_RELIABILITY_H_

// End-to-end delay reliability of a user that splits jobs between a local
// M/M/1 processor and an offloading path (M/M/1 transmission queue followed by
// edge execution), and the minimum link rate meeting a reliability target.

namespace thz::reliability {

// Statistics shared by every job: exponential sizes and CPU demands.
struct TaskProfile {
  double input_bits = 8e6;     // mean input size per job, L_a
  double cycles_per_job = 1e7;  // mean CPU cycles per job, mu_a

  void validate() const;
};

struct UserProfile {
  double arrival_rate = 0.0;  // jobs/s
  double cpu_hz = 0.0;        // local CPU cycles/s

  void validate() const;
  double local_service_rate(const TaskProfile& task) const {
    return cpu_hz / task.cycles_per_job;
  }
};

struct EdgeProfile {
  double cpu_hz = 0.0;

  void validate() const;
  double service_rate(const TaskProfile& task) const {
    return cpu_hz / task.cycles_per_job;
  }
};

struct QosTarget {
  double delay_s = 0.08;         // epsilon
  double reliability = 0.99999;  // theta_th

  void validate() const;
};

// Offloading-path rates for one user.
struct QueueRates {
  double transmit;  // u = R/L_a - beta*lambda
  double edge;      // v = mu_m - beta*lambda

  // Throws StabilityError unless both rates are positive.
  static QueueRates make(const UserProfile& user, const TaskProfile& task,
                         const EdgeProfile& edge, double beta,
                         double rate_bps);
  double gap() const { return edge - transmit; }  // x = v - u
};

// 1 - exp(-(mu_l - (1 - beta) lambda) eps). Throws StabilityError when
// (1 - beta) lambda >= mu_l and the local queue is non-empty.
double local_reliability(const UserProfile& user, const TaskProfile& task,
                         double beta, double delay_s);

// Pr{t1 + t2 <= eps} for t1 ~ Exp(u), t2 ~ Exp(v).
double edge_reliability(const QueueRates& rates, double delay_s);

// (1 - beta) Phi_l + beta Phi_m. Terms with zero weight are skipped, so
// beta = 0 ignores the link and beta = 1 ignores the local CPU.
double system_reliability(const UserProfile& user, const TaskProfile& task,
                          const EdgeProfile& edge, double beta,
                          double rate_bps, double delay_s);

enum class ThresholdSource {
  kPrincipalBranch,
  kMinusOneBranch,
  kStabilityFloor,  // target already met locally; only u > 0 binds
  kOracleFallback,
};

struct RateThreshold {
  double rate_bps;
  ThresholdSource source;
  // 1/Lambda: the bound on (exp(x eps) - 1)/x is Lambda. Zero on the floor.
  double inverse_lambda;
};

// Multiplier applied to beta*lambda*L_a on the stability floor.
inline constexpr double kStabilityFloorMargin = 1e-6;
// Tolerance on system_reliability(R_th) == theta used for branch selection.
inline constexpr double kBranchCheckTolerance = 1e-8;

// Minimum rate R with system_reliability(beta, R) >= theta, via Lambert W.
// Requires 0 < beta <= 1 and stable local and edge queues. Throws
// InfeasibleError when no finite rate reaches the target.
RateThreshold rate_threshold(const UserProfile& user, const TaskProfile& task,
                             const EdgeProfile& edge, const QosTarget& qos,
                             double beta);

// Independent bisection on system_reliability(R) - theta.
double rate_threshold_oracle(const UserProfile& user, const TaskProfile& task,
                             const EdgeProfile& edge, const QosTarget& qos,
                             double beta);

}  // namespace thz::reliability

#endif  // THZ_RELIABILITY_H_
