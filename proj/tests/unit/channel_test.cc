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

#include "thz/channel.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.h"
#include "thz/errors.h"

namespace thz::channel {
namespace {

// 50-digit references from a direct evaluation of the fit and link budget.
constexpr double kGamma150 = 9.2867087863898238587;
constexpr double kGamma100 = 7.3613350774869617647;
constexpr double kGamma215 = 12.546354584277923797;
constexpr double kGamma557 = 16154.441637545714372;
constexpr double kDerivative150 = 0.043079485498378480812;
constexpr double kSpreading150At10 = 95.963597367162300991;
constexpr double kLoss150At10 = 96.056464455026199230;
constexpr double kRate150At10 = 17988550141.472367459;
constexpr double kChiOneGbps = 258.99858883175463784;
constexpr double kChiAtBandwidth = 247.55822781395132385;
constexpr double kCrossover = 216.56919282753210855;
constexpr double kDistance150 = 44.775399456613649285;  // R = 1567978483.52

const GaussianFit& fit() {
  static const GaussianFit f = GaussianFit::standard();
  return f;
}

TEST(GaussianFit, RejectsNonPositiveWidth) {
  auto terms = GaussianFit::standard().terms();
  terms[3].width_ghz = 0.0;
  EXPECT_THROW(GaussianFit{terms}, ValidationError);
}

TEST(GaseousAttenuation, ReferenceValues) {
  EXPECT_NEAR(gaseous_attenuation(fit(), 150.0), kGamma150, 1e-12);
  EXPECT_NEAR(gaseous_attenuation(fit(), 100.0), kGamma100, 1e-12);
  EXPECT_NEAR(gaseous_attenuation(fit(), 215.0), kGamma215, 1e-12);
  EXPECT_NEAR(gaseous_attenuation(fit(), 557.0), kGamma557, 1e-8);
}

TEST(GaseousAttenuation, LinePeakAtLeastAmplitude) {
  EXPECT_GE(gaseous_attenuation(fit(), 557.0), 9906.0);
}

TEST(GaseousAttenuation, OutsideFitRange) {
  EXPECT_THROW(gaseous_attenuation(fit(), 99.0), DomainError);
  EXPECT_THROW(gaseous_attenuation(fit(), 1000.5), DomainError);
  EXPECT_NO_THROW(gaseous_attenuation(fit(), 1000.0));
}

TEST(AttenuationDerivative, ReferenceValue) {
  EXPECT_NEAR(attenuation_derivative(fit(), 150.0), kDerivative150, 1e-14);
}

TEST(AttenuationDerivative, PositiveBelow215) {
  for (double f = 100.0; f <= 215.0; f += 0.5) {
    EXPECT_GT(attenuation_derivative(fit(), f), 0.0) << f;
  }
}

TEST(AttenuationDerivative, ZeroAtSingleTermPeak) {
  auto terms = GaussianFit::standard().terms();
  for (std::size_t i = 1; i < terms.size(); ++i) terms[i].amplitude_db_per_km = 0.0;
  EXPECT_EQ(attenuation_derivative(GaussianFit{terms}, 557.0), 0.0);
}

TEST(AttenuationDerivativeProperty, MatchesCentralDifference) {
  testing::Gen gen(21);
  for (int i = 0; i < 500; ++i) {
    const double f = gen.uniform(100.01, 999.99);
    const double h = 1e-4 * std::min(1.0, 0.1 * f / 100.0);
    const double fd = (gaseous_attenuation(fit(), f + h) -
                       gaseous_attenuation(fit(), f - h)) / (2 * h);
    const double d = attenuation_derivative(fit(), f);
    // Absolute floor for points where the slope crosses zero.
    EXPECT_LE(std::fabs(fd - d), 1e-6 * std::fabs(d) + 1e-6 * gaseous_attenuation(fit(), f))
        << f;
  }
}

TEST(PathLoss, SpreadingAndTotal) {
  EXPECT_NEAR(spreading_loss(150.0, 10.0), kSpreading150At10, 1e-11);
  EXPECT_NEAR(path_loss(fit(), 150.0, 10.0), kLoss150At10, 1e-11);
}

TEST(PathLoss, DoublingDistance) {
  const double d = 37.0, f = 180.0;
  const double extra = path_loss(fit(), f, 2 * d) - path_loss(fit(), f, d);
  EXPECT_NEAR(extra, 20.0 * std::log10(2.0) + gaseous_attenuation(fit(), f) * d / 1000.0,
              1e-11);
}

TEST(PathLoss, RejectsNonPositiveDistance) {
  EXPECT_THROW(path_loss(fit(), 150.0, 0.0), DomainError);
  EXPECT_THROW(path_loss(fit(), 150.0, -1.0), DomainError);
}

TEST(PathLossProperty, IncreasingInFrequencyAndDistance) {
  testing::Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    const double f = gen.uniform(100.0, 214.0), d = gen.log_uniform(0.1, 1e4);
    EXPECT_LT(path_loss(fit(), f, d), path_loss(fit(), f + gen.uniform(0.01, 1.0), d));
    EXPECT_LT(path_loss(fit(), f, d), path_loss(fit(), f, d * gen.uniform(1.001, 2.0)));
  }
}

TEST(DataRate, ReferenceValue) {
  EXPECT_NEAR(data_rate(fit(), RadioParams{}, 150.0, 10.0) / kRate150At10, 1.0, 1e-12);
}

TEST(DataRate, ApproachesZeroLossBoundFromBelow) {
  const RadioParams radio;
  // With no path loss at all the SNR would be p*G/sigma^2.
  const double bound = radio.bandwidth_hz *
                       std::log2(1.0 + radio.effective_power_w() / radio.noise_w());
  const double r = data_rate(fit(), radio, 150.0, 1e-6);
  EXPECT_GT(r, bound);  // loss is negative at micrometres: the bound is exceeded
  EXPECT_GT(data_rate(fit(), radio, 150.0, 1e-3), data_rate(fit(), radio, 150.0, 1.0));
}

TEST(DataRateProperty, DecreasingInDistance) {
  testing::Gen gen(23);
  const RadioParams radio;
  for (int i = 0; i < 500; ++i) {
    const double f = gen.uniform(100.0, 1000.0), d = gen.log_uniform(0.01, 1e3);
    const double near = data_rate(fit(), radio, f, d);
    if (near == 0.0) continue;  // SNR underflow inside an absorption line
    EXPECT_LT(data_rate(fit(), radio, f, 2 * d), near);
  }
}

TEST(Chi, ReferenceValues) {
  const RadioParams radio;
  EXPECT_NEAR(chi(radio, 1e9), kChiOneGbps, 1e-11);
  EXPECT_NEAR(chi(radio, radio.bandwidth_hz), kChiAtBandwidth, 1e-11);
}

TEST(Chi, RejectsNonPositiveRate) {
  EXPECT_THROW(chi(RadioParams{}, 0.0), DomainError);
  EXPECT_THROW(chi(RadioParams{}, -5.0), DomainError);
}

TEST(ChiProperty, Decreasing) {
  testing::Gen gen(24);
  for (int i = 0; i < 300; ++i) {
    const double r = gen.log_uniform(1e3, 1e12);
    EXPECT_LT(chi(RadioParams{}, 2 * r), chi(RadioParams{}, r));
  }
}

TEST(Distance, MatchesBisectionReference) {
  EXPECT_NEAR(distance(fit(), RadioParams{}, 150.0, 1567978483.52), kDistance150, 1e-9);
}

TEST(DistanceProperty, RoundTrip) {
  const RadioParams radio;
  for (double f = 100.0; f <= 215.0; f += 5.0) {
    for (double r = 1e6; r <= 1e12 * 1.0001; r *= std::sqrt(10.0)) {
      const double d = distance(fit(), radio, f, r);
      EXPECT_LE(std::fabs(data_rate(fit(), radio, f, d) - r) / r, 1e-9) << f << " " << r;
    }
  }
}

TEST(DistanceProperty, DecreasingInRate) {
  testing::Gen gen(25);
  const RadioParams radio;
  for (int i = 0; i < 500; ++i) {
    const double f = gen.uniform(100.0, 400.0), r = gen.log_uniform(1e6, 1e11);
    EXPECT_LT(distance(fit(), radio, f, 2 * r), distance(fit(), radio, f, r));
    // Forward difference of d in R is negative everywhere.
    EXPECT_LT(distance(fit(), radio, f, r * (1 + 1e-6)), distance(fit(), radio, f, r));
  }
}

TEST(SupermodularityGap, DegenerateRectangles) {
  const RadioParams radio;
  EXPECT_EQ(supermodularity_gap(fit(), radio, 1e9, 150.0, 1e8, 0.0), 0.0);
  EXPECT_EQ(supermodularity_gap(fit(), radio, 1e9, 150.0, 0.0, 5.0), 0.0);
}

TEST(SupermodularityGapProperty, PositiveBelow215) {
  const RadioParams radio;
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const double r = 1e8 * std::pow(1000.0, i / 19.0);
    for (int j = 0; j < 20; ++j) {
      const double f = 100.0 + (210.0 - 100.0) * j / 19.0;
      EXPECT_GT(supermodularity_gap(fit(), radio, r, f, 0.25 * r, 5.0), 0.0)
          << r << " " << f;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 400);
}

TEST(SupermodularityGapProperty, RandomRectangles) {
  testing::Gen gen(26);
  const RadioParams radio;
  for (int i = 0; i < 500; ++i) {
    const double f = gen.uniform(100.0, 200.0);
    const double df = gen.uniform(0.5, 215.0 - f);
    const double r = gen.log_uniform(1e7, 5e11);
    EXPECT_GT(supermodularity_gap(fit(), radio, r, f, gen.uniform(0.05, 1.0) * r, df), 0.0);
  }
}

TEST(Crossover, TableFit) {
  const double f = attenuation_crossover(fit());
  EXPECT_NEAR(f, 216.5692, 0.05);
  EXPECT_NEAR(f, kCrossover, 1e-8);
}

TEST(Crossover, SignsOnEitherSide) {
  EXPECT_LT(crossover_function(fit(), 200.0), 0.0);
  EXPECT_GT(crossover_function(fit(), 300.0), 0.0);
}

TEST(Crossover, NoSignChangeForFlatFit) {
  auto terms = GaussianFit::standard().terms();
  for (auto& t : terms) t.amplitude_db_per_km = 0.0;
  terms[5].amplitude_db_per_km = 1.0;  // pure wide background, no crossover
  terms[5].width_ghz = 1e6;
  EXPECT_THROW(attenuation_crossover(GaussianFit{terms}), NoSignChangeError);
}

TEST(FrequencyGrid, SortsAndValidates) {
  FrequencyGrid grid({130.0, 110.0, 120.0});
  ASSERT_EQ(grid.size(), 3u);
  EXPECT_EQ(grid.ghz()[0], 110.0);
  EXPECT_EQ(grid.ghz()[2], 130.0);
  EXPECT_TRUE(grid.within_sorted_matching_range());
  EXPECT_FALSE(FrequencyGrid({120.0, 250.0}).within_sorted_matching_range());
}

TEST(FrequencyGrid, RejectsDuplicates) {
  try {
    FrequencyGrid({120.0, 130.0, 120.0});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("the frequency occupied by each user is different"),
              std::string::npos);
  }
}

TEST(FrequencyGrid, RejectsOutOfRange) {
  EXPECT_THROW(FrequencyGrid({90.0}), ValidationError);
  EXPECT_THROW(FrequencyGrid({1200.0}), ValidationError);
}

TEST(RadioParams, Validation) {
  RadioParams r;
  EXPECT_NO_THROW(r.validate());
  r.bandwidth_hz = 0.0;
  EXPECT_THROW(r.validate(), ValidationError);
  r = RadioParams{};
  r.tx_power_w = -1.0;
  EXPECT_THROW(r.validate(), ValidationError);
  EXPECT_NEAR(RadioParams{}.effective_power_w(), 0.1 * 1e4, 1e-9);
}

}  // namespace
}  // namespace thz::channel
