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

#ifndef THZ_CLI_VERIFY_H_
#define THZ_CLI_VERIFY_H_

#include <string>
#include <vector>

#include "thz/optimizer.h"

namespace thz::cli {

enum class CheckStatus { kPass, kFail, kSkipped };

struct CheckResult {
  std::string name;
  CheckStatus status;
  std::string detail;
};

// Property suite run by `thz_planner verify`: rate/distance round trip,
// supermodularity of distance, closed-form threshold vs bisection, and sorted
// vs exhaustive frequency assignment.
std::vector<CheckResult> run_verification(const optimizer::Scenario& scenario);

}  // namespace thz::cli

#endif  // THZ_CLI_VERIFY_H_
