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

#include "thz/numerics.h"

#include <cmath>
#include <limits>
#include <string>

#include "thz/errors.h"

namespace thz::numerics {
namespace {

constexpr int kMaxHalleyIterations = 64;
constexpr double kStepTolerance = 1e-14;
// Below this magnitude exp(-w) overflows on the minus-one branch, so the
// log-space solver takes over.
constexpr double kMinusOneLogCutover = 1e-280;

double principal_guess(double x) {
  if (x < -0.32) {
    const double p = std::sqrt(2.0 * std::fma(std::numbers::e, x, 1.0));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  }
  if (x < 0.5) return x * (1.0 - x * (1.0 - 1.5 * x));
  if (x < 3.0) return 0.8 * std::log1p(x);
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

double minus_one_guess(double x) {
  if (x < -0.25) {
    const double p = -std::sqrt(2.0 * std::fma(std::numbers::e, x, 1.0));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0));
  }
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

// Halley iteration on w*exp(w) - x, written in terms of
// t = w - x*exp(-w) = f(w)/exp(w) so large |w| does not overflow.
double halley(Branch branch, double x, double w) {
  for (int i = 0; i < kMaxHalleyIterations; ++i) {
    const double t = w - x * std::exp(-w);
    if (t == 0.0) break;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = t / (wp1 - 0.5 * (w + 2.0) * t / wp1);
    double next = w - step;
    // Stay on the requested side of the branch point.
    if (branch == Branch::kPrincipal && next < -1.0) next = 0.5 * (w - 1.0);
    if (branch == Branch::kMinusOne && next > -1.0) next = 0.5 * (w - 1.0);
    const bool converged =
        std::abs(next - w) <= kStepTolerance * std::max(1.0, std::abs(next));
    w = next;
    if (converged) break;
  }
  return w;
}

}  // namespace

double lambert_w(Branch branch, double x) {
  if (std::isnan(x) || x < kMinusInvE) {
    throw DomainError("lambert_w: argument " + std::to_string(x) +
                      " is below -1/e");
  }
  if (x == kMinusInvE) return -1.0;
  if (branch == Branch::kPrincipal) {
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;
    return halley(branch, x, principal_guess(x));
  }
  if (x >= 0.0) {
    throw DomainError("lambert_w: minus-one branch needs x < 0, got " +
                      std::to_string(x));
  }
  if (x > -kMinusOneLogCutover) {
    return lambert_w_minus_one_from_log(std::log(-x));
  }
  return halley(branch, x, minus_one_guess(x));
}

double lambert_w_minus_one_from_log(double log_neg_x) {
  if (std::isnan(log_neg_x) || log_neg_x > -1.0) {
    throw DomainError("lambert_w_minus_one_from_log: log(-x) must be <= -1");
  }
  if (log_neg_x == -1.0) return -1.0;
  if (std::isinf(log_neg_x)) return log_neg_x;
  if (log_neg_x > std::log(kMinusOneLogCutover)) {
    return lambert_w(Branch::kMinusOne, -std::exp(log_neg_x));
  }
  // Newton on w + log(-w) = log_neg_x; the map is monotone for w <= -1.
  double w = log_neg_x - std::log(-log_neg_x);
  for (int i = 0; i < kMaxHalleyIterations; ++i) {
    const double g = w + std::log(-w) - log_neg_x;
    const double step = g * w / (w + 1.0);
    w -= step;
    if (std::abs(step) <= kStepTolerance * std::abs(w)) break;
  }
  return w;
}

ScalarMinimum minimize_scalar(const std::function<double(double)>& f,
                              double lo, double hi, double tol,
                              int grid_samples) {
  if (!(lo < hi) || !(tol > 0.0) || grid_samples < 3) {
    throw DomainError("minimize_scalar: need lo < hi, tol > 0, >= 3 samples");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto eval = [&f](double x) {
    const double y = f(x);
    return std::isfinite(y) ? y : kInf;
  };

  const double h = (hi - lo) / (grid_samples - 1);
  int best = -1;
  double best_value = kInf;
  for (int i = 0; i < grid_samples; ++i) {
    const double x = (i == grid_samples - 1) ? hi : lo + i * h;
    const double y = eval(x);
    if (y < best_value) {
      best_value = y;
      best = i;
    }
  }
  if (best < 0) {
    throw DomainError("minimize_scalar: objective non-finite on the whole grid");
  }
  const double best_x = (best == grid_samples - 1) ? hi : lo + best * h;

  double a = best == 0 ? lo : lo + (best - 1) * h;
  double b = best >= grid_samples - 2 ? hi : lo + (best + 1) * h;
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  const double x_golden = 0.5 * (a + b);
  const double f_golden = eval(x_golden);
  if (f_golden < best_value) return {x_golden, f_golden};
  return {best_x, best_value};
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  if (!(lo <= hi) || !(tol > 0.0)) {
    throw DomainError("find_root: need lo <= hi and tol > 0");
  }
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (std::isnan(f_lo) || std::isnan(f_hi)) {
    throw DomainError("find_root: objective is NaN at a bracket end");
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NoSignChangeError("find_root: no sign change on [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "]");
  }
  // Bisection halves until the bracket is within tol or cannot shrink further.
  for (int i = 0; i < 2048 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

}  // namespace thz::numerics
