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

#ifndef THZ_NUMERICS_H_
#define THZ_NUMERICS_H_

#include <functional>
#include <numbers>

namespace thz::numerics {

inline constexpr double kMinusInvE = -1.0 / std::numbers::e;

// Real branches of the Lambert W function.
enum class Branch {
  kPrincipal,  // W0, defined on [-1/e, inf), returns w >= -1
  kMinusOne,   // W-1, defined on [-1/e, 0), returns w <= -1
};

// Solves w * exp(w) = x on the requested branch by Halley iteration.
// Throws DomainError for x < -1/e, or x >= 0 on the minus-one branch.
double lambert_w(Branch branch, double x);

// W-1(x) for x = -exp(log_neg_x), usable when x itself would underflow.
// Requires log_neg_x <= -1.
double lambert_w_minus_one_from_log(double log_neg_x);

struct ScalarMinimum {
  double x;
  double value;
};

inline constexpr int kDefaultGridSamples = 1024;

// Global minimizer on [lo, hi]: a uniform grid picks the best bracket and
// golden-section search refines it to within `tol`. Non-finite samples are
// treated as +inf. Throws DomainError if every grid sample is non-finite.
ScalarMinimum minimize_scalar(const std::function<double(double)>& f,
                              double lo, double hi, double tol,
                              int grid_samples = kDefaultGridSamples);

// Bisection root of f on [lo, hi]. Requires f(lo) * f(hi) <= 0.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

double db_to_linear(double db);
double linear_to_db(double ratio);
double dbm_to_watts(double dbm);

}  // namespace thz::numerics

#endif  // THZ_NUMERICS_H_
