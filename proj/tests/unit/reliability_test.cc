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

#include <cmath>

#include <gtest/gtest.h>

#include "generators.h"
#include "thz/errors.h"

namespace thz::reliability {
namespace {

// Quadrature of the convolution integrand at 50 digits.
constexpr double kEdge100And50 = 0.96370418485043415425;
constexpr double kEdge50And50 = 0.90842180555632910463;
constexpr double kLocalMu100 = 0.99752124782333364158;  // 1 - e^-6

const TaskProfile kTask{};

UserProfile user(double lambda, double mu_local) {
  return {lambda, mu_local * kTask.cycles_per_job};
}
EdgeProfile edge(double mu_edge) { return {mu_edge * kTask.cycles_per_job}; }

double quadrature(double u, double v, double eps) {
  return testing::adaptive_simpson(
      [&](double t) { return -std::expm1(-u * t) * v * std::exp(-v * (eps - t)); },
      0.0, eps, 1e-14);
}

TEST(LocalReliability, Example) {
  EXPECT_NEAR(local_reliability(user(50, 100), kTask, 0.5, 0.08), kLocalMu100, 1e-15);
}

TEST(LocalReliability, VanishingDelay) {
  EXPECT_NEAR(local_reliability(user(50, 100), kTask, 0.5, 1e-12), 0.0, 1e-9);
}

TEST(LocalReliability, FullOffloadIsPureService) {
  EXPECT_NEAR(local_reliability(user(50, 100), kTask, 1.0, 0.08), -std::expm1(-8.0), 1e-15);
}

TEST(LocalReliability, Unstable) {
  EXPECT_THROW(local_reliability(user(100, 50), kTask, 0.0, 0.08), StabilityError);
  EXPECT_THROW(local_reliability(user(100, 50), kTask, 0.5, 0.08), StabilityError);
}

TEST(EdgeReliability, Examples) {
  EXPECT_NEAR(edge_reliability({100, 50}, 0.08), kEdge100And50, 1e-15);
  EXPECT_NEAR(edge_reliability({50, 50}, 0.08), kEdge50And50, 1e-15);
  EXPECT_NEAR(edge_reliability({100, 50}, 1e3), 1.0, 1e-15);
}

TEST(EdgeReliability, Unstable) {
  EXPECT_THROW(edge_reliability({0.0, 50}, 0.08), StabilityError);
  EXPECT_THROW(edge_reliability({50, -1.0}, 0.08), StabilityError);
}

TEST(QueueRates, MakeChecksStability) {
  const auto r = QueueRates::make(user(40, 100), kTask, edge(200), 0.5, 8e8);
  EXPECT_DOUBLE_EQ(r.transmit, 100.0 - 20.0);
  EXPECT_DOUBLE_EQ(r.edge, 180.0);
  EXPECT_DOUBLE_EQ(r.gap(), 100.0);
  EXPECT_THROW(QueueRates::make(user(40, 100), kTask, edge(200), 0.5, 1.6e8), StabilityError);
  EXPECT_THROW(QueueRates::make(user(40, 100), kTask, edge(20), 0.5, 8e8), StabilityError);
}

TEST(SystemReliability, Endpoints) {
  const UserProfile u = user(50, 100);
  const EdgeProfile m = edge(100);
  const double rate = 150 * kTask.input_bits;
  EXPECT_EQ(system_reliability(u, kTask, m, 0.0, rate, 0.08),
            local_reliability(u, kTask, 0.0, 0.08));
  EXPECT_EQ(system_reliability(u, kTask, m, 1.0, rate, 0.08),
            edge_reliability(QueueRates::make(u, kTask, m, 1.0, rate), 0.08));
  // beta = 1: u = 150 - 50, v = 100 - 50, the edge example.
  EXPECT_NEAR(system_reliability(u, kTask, m, 1.0, rate, 0.08), kEdge100And50, 1e-15);
}

TEST(SystemReliability, Mixture) {
  // beta = 0.5: local mu 100 vs (1-b)lambda 25; u = 125 - 25, v = 125 - 25.
  const UserProfile u = user(50, 100);
  const double local = -std::expm1(-75 * 0.08);
  const double phi_m = edge_reliability({100, 100}, 0.08);
  EXPECT_NEAR(system_reliability(u, kTask, edge(125), 0.5, 125 * kTask.input_bits, 0.08),
              0.5 * local + 0.5 * phi_m, 1e-15);
}

TEST(EdgeReliabilityProperty, MatchesQuadrature) {
  testing::Gen gen(31);
  for (int i = 0; i < 200; ++i) {
    const double u = gen.log_uniform(1.0, 2000.0);
    const double v = i % 10 == 0 ? u * (1 + gen.uniform(-1e-7, 1e-7))
                                 : gen.log_uniform(1.0, 2000.0);
    const double eps = gen.log_uniform(1e-3, 0.5);
    EXPECT_NEAR(edge_reliability({u, v}, eps), quadrature(u, v, eps), 1e-9)
        << u << " " << v << " " << eps;
  }
}

TEST(EdgeReliabilityProperty, ContinuousAtEqualRates) {
  // Stepping u by 1e-6 off v moves the value by the true slope
  // v eps^2 e^{-v eps} / 2 (up to eps / 2e); the rest must vanish.
  testing::Gen gen(32);
  for (int i = 0; i < 200; ++i) {
    const double v = gen.log_uniform(1.0, 2000.0), eps = gen.log_uniform(1e-3, 0.5);
    const double degenerate = edge_reliability({v, v}, eps);
    const double slope = 0.5 * v * eps * eps * std::exp(-v * eps);
    for (double h : {1e-6, -1e-6}) {
      const double step = edge_reliability({v + h, v}, eps);
      // Inside the 1e-9 relative switch the degenerate form is returned as is.
      const double tol = std::fabs(h) <= 1e-9 * v ? 1e-11 + slope * std::fabs(h) : 1e-11;
      EXPECT_NEAR(step, degenerate + slope * h, tol) << v << " " << eps;
      if (slope < 1e-2) {
        EXPECT_NEAR(step, degenerate, 1e-8) << v << " " << eps;
      }
    }
  }
}

TEST(EdgeReliabilityProperty, NoCancellationNearEqualRates) {
  // The symmetric average removes the first-order term; what is left is
  // second order in the step unless the closed form loses digits.
  testing::Gen gen(37);
  for (int i = 0; i < 200; ++i) {
    const double v = gen.log_uniform(1.0, 2000.0), eps = gen.log_uniform(1e-3, 0.5);
    for (double h : {1e-3, 1e-6, 1e-8}) {  // all outside the 1e-9 switch
      const double avg =
          0.5 * (edge_reliability({v + h * v, v}, eps) + edge_reliability({v - h * v, v}, eps));
      const double second = (h * v * eps) * (h * v * eps);
      EXPECT_NEAR(avg, edge_reliability({v, v}, eps), 1e-12 + second) << v << " " << eps;
    }
  }
}

TEST(EdgeReliabilityProperty, Monotone) {
  testing::Gen gen(33);
  for (int i = 0; i < 500; ++i) {
    const double u = gen.log_uniform(1.0, 500.0), v = gen.log_uniform(1.0, 500.0);
    const double eps = gen.log_uniform(1e-3, 0.1);
    const double base = edge_reliability({u, v}, eps);
    const double k = gen.uniform(1.01, 1.5);
    EXPECT_GT(edge_reliability({u * k, v}, eps), base);
    EXPECT_GT(edge_reliability({u, v * k}, eps), base);
    EXPECT_GT(edge_reliability({u, v}, eps * k), base);
  }
}

TEST(LocalReliabilityProperty, Monotone) {
  testing::Gen gen(34);
  for (int i = 0; i < 500; ++i) {
    const double mu = gen.uniform(10.0, 300.0), lambda = gen.uniform(0.0, 0.9 * mu);
    const double eps = gen.log_uniform(1e-3, 0.1), k = gen.uniform(1.01, 1.5);
    const double base = local_reliability(user(lambda, mu), kTask, 0.0, eps);
    EXPECT_GT(local_reliability(user(lambda, mu), kTask, 0.0, eps * k), base);
    EXPECT_GT(local_reliability(user(lambda, mu * k), kTask, 0.0, eps), base);
  }
}

TEST(SystemReliabilityProperty, MixtureBounds) {
  testing::Gen gen(35);
  for (int i = 0; i < 500; ++i) {
    const double lambda = gen.uniform(1.0, 80.0);
    const UserProfile u = user(lambda, gen.uniform(lambda * 1.05, 300.0));
    const EdgeProfile m = edge(gen.uniform(lambda * 1.05, 2000.0));
    const double beta = gen.uniform(0.0, 1.0);
    const double rate = (beta * lambda + gen.uniform(1.0, 500.0)) * kTask.input_bits;
    const double eps = gen.log_uniform(1e-3, 0.2);
    const double pl = local_reliability(u, kTask, beta, eps);
    const double pm = edge_reliability(QueueRates::make(u, kTask, m, beta, rate), eps);
    const double p = system_reliability(u, kTask, m, beta, rate, eps);
    EXPECT_GE(p, std::min(pl, pm) - 1e-15);
    EXPECT_LE(p, std::max(pl, pm) + 1e-15);
  }
}

TEST(RateThreshold, ReferenceUserMatchesOracle) {
  const UserProfile u{65.0, 1.5e9};
  const EdgeProfile m{1e10};
  const QosTarget q{0.08, 0.99999};
  const auto r = rate_threshold(u, kTask, m, q, 0.8);
  const double oracle = rate_threshold_oracle(u, kTask, m, q, 0.8);
  EXPECT_NEAR(r.rate_bps / oracle, 1.0, 1e-6);
  EXPECT_NEAR(system_reliability(u, kTask, m, 0.8, r.rate_bps, 0.08), 0.99999, 1e-8);
  EXPECT_NE(r.source, ThresholdSource::kOracleFallback);
  EXPECT_GE(r.rate_bps, 0.8 * 65.0 * kTask.input_bits);
}

TEST(RateThreshold, StabilityFloorWhenMetLocally) {
  const UserProfile u{20.0, 2e9};  // mu_l = 200
  const EdgeProfile m{1e10};
  const QosTarget q{0.08, 0.6};  // (1 - beta) * phi_l is about 0.7
  const auto r = rate_threshold(u, kTask, m, q, 0.3);
  EXPECT_EQ(r.source, ThresholdSource::kStabilityFloor);
  EXPECT_DOUBLE_EQ(r.rate_bps, 0.3 * 20.0 * kTask.input_bits * (1 + kStabilityFloorMargin));
  EXPECT_DOUBLE_EQ(rate_threshold_oracle(u, kTask, m, q, 0.3), r.rate_bps);
}

TEST(RateThreshold, EdgeRequirementOfOneIsInfeasible) {
  const UserProfile u{50.0, 1e9};
  const EdgeProfile m{1e10};
  const double beta = 0.5;
  const double phi_l = local_reliability(u, kTask, beta, 0.08);
  const QosTarget q{0.08, (1 - beta) * phi_l + beta};
  EXPECT_THROW(rate_threshold(u, kTask, m, q, beta), InfeasibleError);
  EXPECT_THROW(rate_threshold_oracle(u, kTask, m, q, beta), InfeasibleError);
}

TEST(RateThreshold, BeyondEdgeCeilingIsInfeasible) {
  // Even an infinitely fast link leaves the edge stage at 1 - e^{-v eps}.
  const UserProfile u{50.0, 0.0};
  const EdgeProfile m{2e9};  // mu_m = 200, v = 150, 1 - e^{-7.5} = 0.99945
  EXPECT_THROW(rate_threshold(u, kTask, m, {0.05, 0.9999}, 1.0), InfeasibleError);
  EXPECT_NO_THROW(rate_threshold(u, kTask, m, {0.05, 0.99}, 1.0));
}

TEST(RateThreshold, Preconditions) {
  const UserProfile u{50.0, 1e9};
  EXPECT_THROW(rate_threshold(u, kTask, EdgeProfile{1e10}, {}, 0.0), Error);
  EXPECT_THROW(rate_threshold(u, kTask, EdgeProfile{4e8}, {}, 1.0), StabilityError);
  EXPECT_THROW(rate_threshold(UserProfile{50.0, 2e8}, kTask, EdgeProfile{1e10}, {}, 0.1),
               StabilityError);
}

TEST(RateThresholdProperty, AgreesWithOracle) {
  testing::Gen gen(36);
  int compared = 0;
  for (int s = 0; s < 20; ++s) {
    const auto sc = gen.scenario(1);
    const auto& u = sc.users[0];
    for (int i = 1; i <= 100; ++i) {
      const double beta = i / 100.0;
      double oracle;
      try {
        oracle = rate_threshold_oracle(u, sc.task, sc.edge, sc.qos, beta);
      } catch (const Error&) {
        EXPECT_THROW(rate_threshold(u, sc.task, sc.edge, sc.qos, beta), Error);
        continue;
      }
      const auto r = rate_threshold(u, sc.task, sc.edge, sc.qos, beta);
      EXPECT_NEAR(r.rate_bps / oracle, 1.0, 1e-6) << s << " " << beta;
      if (r.source != ThresholdSource::kStabilityFloor) {
        EXPECT_NEAR(system_reliability(u, sc.task, sc.edge, beta, r.rate_bps, sc.qos.delay_s),
                    sc.qos.reliability, 1e-8);
      }
      ++compared;
    }
  }
  EXPECT_GT(compared, 200);
}

TEST(Profiles, Validation) {
  EXPECT_THROW((TaskProfile{0.0, 1e7}.validate()), ValidationError);
  EXPECT_THROW((UserProfile{-1.0, 1e9}.validate()), ValidationError);
  EXPECT_NO_THROW((UserProfile{0.0, 0.0}.validate()));
  EXPECT_THROW((EdgeProfile{0.0}.validate()), ValidationError);
  EXPECT_THROW((QosTarget{0.0, 0.9}.validate()), ValidationError);
  EXPECT_THROW((QosTarget{0.08, 1.0}.validate()), ValidationError);
}

}  // namespace
}  // namespace thz::reliability
