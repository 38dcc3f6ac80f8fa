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

#ifndef THZ_CLI_SCENARIO_IO_H_
#define THZ_CLI_SCENARIO_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "thz/errors.h"
#include "thz/optimizer.h"

namespace thz::cli {

// Malformed scenario document (syntax, missing or unknown keys, bad types).
class ParseError : public Error {
 public:
  using Error::Error;
};

struct LoadedScenario {
  optimizer::Scenario scenario;
  std::vector<std::string> warnings;
  std::uint64_t content_hash = 0;  // FNV-1a over the file bytes
};

// Reads a YAML scenario. Errors carry "file:line:col: key.path: message".
// Throws ParseError or ValidationError.
LoadedScenario load_scenario(const std::filesystem::path& path);

// Same, from an in-memory document; `origin` names it in diagnostics.
LoadedScenario parse_scenario(std::string_view text,
                              std::string_view origin = "<memory>");

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace thz::cli

#endif  // THZ_CLI_SCENARIO_IO_H_
