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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <string>
#include <utility>

#include "thz/errors.h"
#include "thz/numerics.h"

namespace thz::channel {
namespace {

constexpr double kLn10 = std::numbers::ln10;
constexpr double kLn2 = std::numbers::ln2;

void check_fit_range(double f_ghz) {
  if (!(f_ghz >= kFitMinGhz && f_ghz <= kFitMaxGhz)) {
    throw DomainError("frequency " + std::to_string(f_ghz) +
                      " GHz is outside the attenuation fit range [100, 1000]");
  }
}

// -20 log10(4 pi / c), the constant folded into chi.
double free_space_offset_db() {
  return -20.0 * std::log10(4.0 * std::numbers::pi / kSpeedOfLight);
}

// W0(exp(log_x)) without forming exp(log_x).
double lambert_w0_from_log(double log_x) {
  if (log_x < 700.0) {
    return numerics::lambert_w(numerics::Branch::kPrincipal, std::exp(log_x));
  }
  double w = log_x - std::log(log_x);
  for (int i = 0; i < 64; ++i) {
    const double step = (w + std::log(w) - log_x) * w / (w + 1.0);
    w -= step;
    if (std::abs(step) <= 1e-15 * w) break;
  }
  return w;
}

}  // namespace

GaussianFit::GaussianFit(const std::array<GaussianTerm, kTerms>& terms)
    : terms_(terms) {
  for (std::size_t i = 0; i < kTerms; ++i) {
    if (!(terms_[i].width_ghz > 0.0) ||
        !std::isfinite(terms_[i].amplitude_db_per_km) ||
        !std::isfinite(terms_[i].center_ghz)) {
      throw ValidationError("gaussian fit term " + std::to_string(i + 1) +
                            " needs finite a, b and c > 0");
    }
  }
}

GaussianFit GaussianFit::standard() {
  return GaussianFit({{
      {9906.0, 557.0, 3.175},
      {9940.0, 752.1, 4.968},
      {7301.0, 987.9, 4.6},
      {5667.0, 556.5, 8.772},
      {542.2, 559.1, 33.58},
      {3.338e15, 1.46e4, 2496.0},
      {208.2, 447.7, 6.968},
  }});
}

void RadioParams::validate() const {
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw ValidationError("radio: bandwidth must be > 0");
  }
  if (!(tx_power_w > 0.0) || !std::isfinite(tx_power_w)) {
    throw ValidationError("radio: transmit power must be > 0");
  }
  if (!std::isfinite(tx_gain_dbi) || !std::isfinite(rx_gain_dbi) ||
      !std::isfinite(noise_dbm)) {
    throw ValidationError("radio: gains and noise must be finite");
  }
}

double RadioParams::noise_w() const { return numerics::dbm_to_watts(noise_dbm); }

double RadioParams::effective_power_w() const {
  return tx_power_w * numerics::db_to_linear(tx_gain_dbi + rx_gain_dbi);
}

FrequencyGrid::FrequencyGrid(std::vector<double> freqs_ghz)
    : freqs_(std::move(freqs_ghz)) {
  std::sort(freqs_.begin(), freqs_.end());
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    if (!(freqs_[i] >= kFitMinGhz && freqs_[i] <= kFitMaxGhz)) {
      throw ValidationError("grid frequency " + std::to_string(freqs_[i]) +
                            " GHz is outside [100, 1000] GHz");
    }
    if (i > 0 && freqs_[i] == freqs_[i - 1]) {
      throw ValidationError(
          "grid: duplicate frequency " + std::to_string(freqs_[i]) +
          " GHz; the frequency occupied by each user is different");
    }
  }
}

bool FrequencyGrid::within_sorted_matching_range() const {
  return freqs_.empty() || freqs_.back() <= kSortedMatchingMaxGhz;
}

double gaseous_attenuation(const GaussianFit& fit, double f_ghz) {
  check_fit_range(f_ghz);
  double sum = 0.0;
  for (const auto& t : fit.terms()) {
    const double z = (f_ghz - t.center_ghz) / t.width_ghz;
    sum += t.amplitude_db_per_km * std::exp(-z * z);
  }
  return sum;
}

double attenuation_derivative(const GaussianFit& fit, double f_ghz) {
  check_fit_range(f_ghz);
  double sum = 0.0;
  for (const auto& t : fit.terms()) {
    const double z = (f_ghz - t.center_ghz) / t.width_ghz;
    sum += 2.0 * t.amplitude_db_per_km * (t.center_ghz - f_ghz) /
           (t.width_ghz * t.width_ghz) * std::exp(-z * z);
  }
  return sum;
}

double spreading_loss(double f_ghz, double d_m) {
  if (!(d_m > 0.0)) throw DomainError("distance must be > 0 m");
  return 20.0 * std::log10(4.0 * std::numbers::pi * f_ghz * 1e9 * d_m /
                           kSpeedOfLight);
}

double path_loss(const GaussianFit& fit, double f_ghz, double d_m) {
  if (!(d_m > 0.0)) throw DomainError("distance must be > 0 m");
  return gaseous_attenuation(fit, f_ghz) * (d_m / 1000.0) +
         spreading_loss(f_ghz, d_m);
}

double data_rate(const GaussianFit& fit, const RadioParams& radio,
                 double f_ghz, double d_m) {
  const double loss_db = path_loss(fit, f_ghz, d_m);
  const double snr = radio.effective_power_w() / radio.noise_w() *
                     std::pow(10.0, -loss_db / 10.0);
  return radio.bandwidth_hz * std::log1p(snr) / kLn2;
}

double chi(const RadioParams& radio, double rate_bps) {
  if (!(rate_bps > 0.0)) throw DomainError("chi: rate must be > 0");
  const double snr_needed = std::expm1(rate_bps / radio.bandwidth_hz * kLn2);
  return 10.0 * std::log10(radio.effective_power_w() /
                           (snr_needed * radio.noise_w())) +
         free_space_offset_db();
}

double distance(const GaussianFit& fit, const RadioParams& radio,
                double f_ghz, double rate_bps) {
  const double gamma_db_per_m = gaseous_attenuation(fit, f_ghz) / 1000.0;
  const double k = gamma_db_per_m * kLn10 / 20.0;  // 1/m
  const double chi_db = chi(radio, rate_bps);
  if (chi_db == -std::numeric_limits<double>::infinity()) return 0.0;
  const double log_y = std::log(k / (f_ghz * 1e9)) + chi_db * kLn10 / 20.0;
  return lambert_w0_from_log(log_y) / k;
}

double supermodularity_gap(const GaussianFit& fit, const RadioParams& radio,
                           double rate_bps, double f_ghz, double d_rate_bps,
                           double d_f_ghz) {
  const double r1 = rate_bps + d_rate_bps;
  const double f1 = f_ghz + d_f_ghz;
  // Grouped so a zero-width side cancels exactly.
  return (distance(fit, radio, f1, r1) - distance(fit, radio, f1, rate_bps)) -
         (distance(fit, radio, f_ghz, r1) - distance(fit, radio, f_ghz, rate_bps));
}

double crossover_function(const GaussianFit& fit, double f_ghz) {
  return f_ghz * attenuation_derivative(fit, f_ghz) -
         gaseous_attenuation(fit, f_ghz);
}

double attenuation_crossover(const GaussianFit& fit) {
  return numerics::find_root(
      [&fit](double f) { return crossover_function(fit, f); }, 150.0, 300.0,
      1e-9);
}

}  // namespace thz::channel
