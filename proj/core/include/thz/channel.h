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

#ifndef THZ_CHANNEL_H_
#define THZ_CHANNEL_H_

// Line-of-sight THz link model: Gaussian-fitted molecular absorption,
// spreading loss, the achievable Shannon rate, and its closed-form inverse
// (distance as a function of the required rate).
//
// Units at the API: frequencies in GHz, distances in meters, rates in bit/s,
// attenuation in dB/km. Conversions to Hz and dB/m happen internally.

#include <array>
#include <span>
#include <vector>

namespace thz::channel {

inline constexpr double kSpeedOfLight = 3e8;  // m/s
inline constexpr double kFitMinGhz = 100.0;
inline constexpr double kFitMaxGhz = 1000.0;
// Upper end of the band where distance is supermodular in (rate, frequency),
// so sorted rate-to-frequency matching is provably optimal.
inline constexpr double kSortedMatchingMaxGhz = 215.0;

struct GaussianTerm {
  double amplitude_db_per_km;
  double center_ghz;
  double width_ghz;
};

// Seven-term Gaussian fit of specific gaseous attenuation over 100-1000 GHz.
class GaussianFit {
 public:
  static constexpr std::size_t kTerms = 7;

  // Throws ValidationError if any width is not strictly positive.
  explicit GaussianFit(const std::array<GaussianTerm, kTerms>& terms);

  // The published default coefficients.
  static GaussianFit standard();

  const std::array<GaussianTerm, kTerms>& terms() const { return terms_; }

 private:
  std::array<GaussianTerm, kTerms> terms_;
};

struct RadioParams {
  double bandwidth_hz = 10e9;
  double tx_power_w = 0.1;
  double tx_gain_dbi = 20.0;
  double rx_gain_dbi = 20.0;
  // Total noise power over the band.
  double noise_dbm = -40.0;

  void validate() const;
  double noise_w() const;
  // p * Gt * Gr in watts (gains converted to linear).
  double effective_power_w() const;
};

// Distinct carrier frequencies in ascending order.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;

  // Sorts the input. Throws ValidationError on duplicates or on values
  // outside the fit range.
  explicit FrequencyGrid(std::vector<double> freqs_ghz);

  std::span<const double> ghz() const { return freqs_; }
  std::size_t size() const { return freqs_.size(); }
  bool within_sorted_matching_range() const;

 private:
  std::vector<double> freqs_;
};

// gamma'(f), dB/km.
double gaseous_attenuation(const GaussianFit& fit, double f_ghz);

// d gamma'/df, dB/km per GHz.
double attenuation_derivative(const GaussianFit& fit, double f_ghz);

// 20 log10(4 pi f d / c) with f in GHz and d in m.
double spreading_loss(double f_ghz, double d_m);

// Absorption (gamma' * d/1000) plus spreading loss, dB.
double path_loss(const GaussianFit& fit, double f_ghz, double d_m);

// B log2(1 + p Gt Gr / (sigma^2 10^(L/10))).
double data_rate(const GaussianFit& fit, const RadioParams& radio,
                 double f_ghz, double d_m);

// Loss budget available at rate R, minus the constant 20 log10(4 pi / c).
double chi(const RadioParams& radio, double rate_bps);

// Unique distance at which data_rate(f, d) == rate_bps, via principal W.
double distance(const GaussianFit& fit, const RadioParams& radio,
                double f_ghz, double rate_bps);

// Mixed second difference of distance over the rectangle
// [R, R + dR] x [f, f + df]; positive where distance is supermodular.
double supermodularity_gap(const GaussianFit& fit, const RadioParams& radio,
                           double rate_bps, double f_ghz, double d_rate_bps,
                           double d_f_ghz);

// f * dgamma'/df - gamma'(f). Where it is <= 0, the Lambert argument of
// distance() is non-increasing in f.
double crossover_function(const GaussianFit& fit, double f_ghz);

// Root of crossover_function on [150, 300] GHz.
double attenuation_crossover(const GaussianFit& fit);

}  // namespace thz::channel

#endif  // THZ_CHANNEL_H_
