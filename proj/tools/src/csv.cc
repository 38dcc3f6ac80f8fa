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

#include "thz/cli/csv.h"

#include <fmt/format.h>

namespace thz::cli {
namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

CsvWriter::CsvWriter(std::ostream& out, std::uint64_t scenario_hash,
                     std::optional<std::uint64_t> seed)
    : out_(out) {
  out_ << fmt::format("# {} {} scenario={:016x} seed={}\n", kToolName,
                      kToolVersion, scenario_hash,
                      seed ? std::to_string(*seed) : std::string("none"));
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << quote(fields[i]);
  }
  out_ << '\n';
}

}  // namespace thz::cli
