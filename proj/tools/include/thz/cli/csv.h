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

#ifndef THZ_CLI_CSV_H_
#define THZ_CLI_CSV_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace thz::cli {

inline constexpr std::string_view kToolName = "thz_planner";
inline constexpr std::string_view kToolVersion = "0.1.0";

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double value);

// RFC-4180 style writer with '\n' line endings and a leading '#' metadata
// line: "# thz_planner <version> scenario=<hash> seed=<seed|none>".
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::uint64_t scenario_hash,
            std::optional<std::uint64_t> seed);

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

}  // namespace thz::cli

#endif  // THZ_CLI_CSV_H_
