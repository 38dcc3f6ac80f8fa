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

#include "thz/reliability.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "thz/errors.h"
#include "thz/numerics.h"

namespace thz::reliability {
namespace {

void check_probability(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("offloading probability must lie in [0, 1], got " +
                      std::to_string(beta));
  }
}

void check_delay(double delay_s) {
  if (!(delay_s >= 0.0)) throw DomainError("delay threshold must be >= 0");
}

// Service-minus-arrival rate of the local queue. Throws when a non-empty
// local queue is unstable.
double local_slack(const UserProfile& user, const TaskProfile& task,
                   double beta) {
  const double local_arrivals = (1.0 - beta) * user.arrival_rate;
  const double slack = user.local_service_rate(task) - local_arrivals;
  if (local_arrivals > 0.0 && !(slack > 0.0)) {
    throw StabilityError("local queue unstable: (1 - beta) lambda = " +
                         std::to_string(local_arrivals) +
                         " >= mu_l = " +
                         std::to_string(user.local_service_rate(task)));
  }
  return slack;
}

// 1 - Phi_m, formed without cancellation so that targets near 1 resolve.
double edge_unreliability(const QueueRates& r, double delay_s) {
  const double u = r.transmit;
  const double v = r.edge;
  const double x = v - u;
  if (std::abs(x) <= 1e-9 * std::max(u, v)) {
    return std::exp(-v * delay_s) * (1.0 + v * delay_s);
  }
  if (std::abs(x * delay_s) < 1.0) {
    return std::exp(-v * delay_s) *
           (1.0 + v * std::expm1(x * delay_s) / x);
  }
  return (v * std::exp(-u * delay_s) - u * std::exp(-v * delay_s)) / x;
}

double system_unreliability(const UserProfile& user, const TaskProfile& task,
                            const EdgeProfile& edge, double beta,
                            double rate_bps, double delay_s) {
  double out = 0.0;
  if (beta < 1.0) {
    out += (1.0 - beta) * std::exp(-local_slack(user, task, beta) * delay_s);
  }
  if (beta > 0.0) {
    const auto rates = QueueRates::make(user, task, edge, beta, rate_bps);
    out += beta * edge_unreliability(rates, delay_s);
  }
  return out;
}

struct BranchCandidate {
  double rate_bps;
  double w;
  bool verified;
};

}  // namespace

void TaskProfile::validate() const {
  if (!(input_bits > 0.0) || !std::isfinite(input_bits)) {
    throw ValidationError("task: mean input size must be > 0 bits");
  }
  if (!(cycles_per_job > 0.0) || !std::isfinite(cycles_per_job)) {
    throw ValidationError("task: mean CPU cycles per job must be > 0");
  }
}

void UserProfile::validate() const {
  if (!(arrival_rate >= 0.0) || !std::isfinite(arrival_rate)) {
    throw ValidationError("user: arrival rate must be >= 0");
  }
  if (!(cpu_hz >= 0.0) || !std::isfinite(cpu_hz)) {
    throw ValidationError("user: local CPU frequency must be >= 0");
  }
}

void EdgeProfile::validate() const {
  if (!(cpu_hz > 0.0) || !std::isfinite(cpu_hz)) {
    throw ValidationError("edge: CPU frequency must be > 0");
  }
}

void QosTarget::validate() const {
  if (!(delay_s > 0.0) || !std::isfinite(delay_s)) {
    throw ValidationError("qos: delay threshold must be > 0");
  }
  if (!(reliability > 0.0 && reliability < 1.0)) {
    throw ValidationError("qos: reliability threshold must lie in (0, 1)");
  }
}

QueueRates QueueRates::make(const UserProfile& user, const TaskProfile& task,
                            const EdgeProfile& edge, double beta,
                            double rate_bps) {
  const double offered = beta * user.arrival_rate;
  QueueRates r{rate_bps / task.input_bits - offered,
               edge.service_rate(task) - offered};
  if (!(r.transmit > 0.0)) {
    throw StabilityError("transmission queue unstable: R/L_a <= beta lambda");
  }
  if (!(r.edge > 0.0)) {
    throw StabilityError("edge queue unstable: mu_m <= beta lambda");
  }
  return r;
}

double local_reliability(const UserProfile& user, const TaskProfile& task,
                         double beta, double delay_s) {
  check_probability(beta);
  check_delay(delay_s);
  return -std::expm1(-local_slack(user, task, beta) * delay_s);
}

double edge_reliability(const QueueRates& rates, double delay_s) {
  check_delay(delay_s);
  if (!(rates.transmit > 0.0) || !(rates.edge > 0.0)) {
    throw StabilityError("edge_reliability: u and v must both be > 0");
  }
  const double u = rates.transmit;
  const double v = rates.edge;
  const double ev = std::exp(-v * delay_s);
  if (std::abs(v - u) <= 1e-9 * std::max(u, v)) {
    return 1.0 - ev - v * delay_s * ev;
  }
  return 1.0 - edge_unreliability(rates, delay_s);
}

double system_reliability(const UserProfile& user, const TaskProfile& task,
                          const EdgeProfile& edge, double beta,
                          double rate_bps, double delay_s) {
  check_probability(beta);
  check_delay(delay_s);
  double out = 0.0;
  if (beta < 1.0) {
    out += (1.0 - beta) * local_reliability(user, task, beta, delay_s);
  }
  if (beta > 0.0) {
    out += beta * edge_reliability(
                      QueueRates::make(user, task, edge, beta, rate_bps),
                      delay_s);
  }
  return out;
}

RateThreshold rate_threshold(const UserProfile& user, const TaskProfile& task,
                             const EdgeProfile& edge, const QosTarget& qos,
                             double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("rate_threshold: beta must lie in (0, 1]");
  }
  const double eps = qos.delay_s;
  const double offered = beta * user.arrival_rate;
  const double mu_m = edge.service_rate(task);
  const double v = mu_m - offered;
  if (!(v > 0.0)) {
    throw StabilityError("edge queue unstable: mu_m <= beta lambda");
  }
  const double local_fail =
      beta < 1.0 ? std::exp(-local_slack(user, task, beta) * eps) : 0.0;

  // Edge path must fail with probability at most q; the edge execution stage
  // alone already fails with probability exp(-v eps).
  const double q = ((1.0 - qos.reliability) - (1.0 - beta) * local_fail) / beta;
  if (q >= 1.0) {
    return {offered * task.input_bits * (1.0 + kStabilityFloorMargin),
            ThresholdSource::kStabilityFloor, 0.0};
  }
  const double ev = std::exp(-v * eps);
  if (!(q > ev)) {
    throw InfeasibleError(
        "reliability target unreachable at beta = " + std::to_string(beta) +
        ": edge execution alone exceeds the allowed failure probability");
  }

  // kappa = 1/Lambda = v / (q exp(v eps) - 1), in log space.
  const double log_kappa =
      std::log(v) - v * eps - std::log(q) - std::log1p(-ev / q);
  const double kappa = std::exp(log_kappa);
  const double log_z = std::log(eps) + log_kappa;  // z = eps / Lambda
  const double z = std::exp(log_z);
  // Lambert argument -z exp(-z), kept as log of its magnitude; clamp to the
  // branch point against rounding.
  const double log_neg_arg = std::min(log_z - z, -1.0);

  auto candidate = [&](numerics::Branch branch) {
    double w;
    if (branch == numerics::Branch::kPrincipal) {
      const double arg = std::max(-std::exp(log_neg_arg), numerics::kMinusInvE);
      w = numerics::lambert_w(branch, arg);
    } else {
      w = numerics::lambert_w_minus_one_from_log(log_neg_arg);
    }
    BranchCandidate c{(mu_m + kappa + w / eps) * task.input_bits, w, false};
    if (c.rate_bps > offered * task.input_bits && std::isfinite(c.rate_bps)) {
      const double phi = system_reliability(user, task, edge, beta,
                                            c.rate_bps, eps);
      c.verified = std::abs(phi - qos.reliability) <= kBranchCheckTolerance;
    }
    return c;
  };

  const BranchCandidate principal = candidate(numerics::Branch::kPrincipal);
  const BranchCandidate minus_one = candidate(numerics::Branch::kMinusOne);
  // w = -z is the trivial root (u = v); when both branches verify, keep the
  // one farther from it.
  const bool use_principal =
      principal.verified &&
      (!minus_one.verified ||
       std::abs(principal.w + z) >= std::abs(minus_one.w + z));
  if (use_principal) {
    return {principal.rate_bps, ThresholdSource::kPrincipalBranch, kappa};
  }
  if (minus_one.verified) {
    return {minus_one.rate_bps, ThresholdSource::kMinusOneBranch, kappa};
  }

  const double oracle = rate_threshold_oracle(user, task, edge, qos, beta);
  spdlog::warn(
      "rate_threshold: closed form missed the reliability target at beta={} "
      "(principal {} bit/s, minus-one {} bit/s); using bisection {} bit/s",
      beta, principal.rate_bps, minus_one.rate_bps, oracle);
  return {oracle, ThresholdSource::kOracleFallback, kappa};
}

double rate_threshold_oracle(const UserProfile& user, const TaskProfile& task,
                             const EdgeProfile& edge, const QosTarget& qos,
                             double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("rate_threshold_oracle: beta must lie in (0, 1]");
  }
  constexpr double kMaxRate = 1e15;
  const double eps = qos.delay_s;
  const double allowed = 1.0 - qos.reliability;
  const double floor_rate = beta * user.arrival_rate * task.input_bits;
  const double lo = floor_rate > 0.0 ? floor_rate * (1.0 + 1e-9)
                                     : task.input_bits * 1e-12;
  // Positive once the target is met; increasing in R.
  auto margin = [&](double rate) {
    return allowed -
           system_unreliability(user, task, edge, beta, rate, eps);
  };
  if (margin(lo) >= 0.0) {
    return floor_rate * (1.0 + kStabilityFloorMargin);
  }
  double hi = std::max(2.0 * lo, task.input_bits);
  while (margin(hi) < 0.0) {
    if (hi > kMaxRate) {
      throw InfeasibleError("rate_threshold_oracle: no rate up to 1e15 bit/s "
                            "reaches the reliability target");
    }
    hi *= 2.0;
  }
  return numerics::find_root(margin, lo, hi, hi * 1e-16);
}

}  // namespace thz::reliability
