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

#include "thz/cli/scenario_io.h"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace thz::cli {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void fail_parse(const YAML::Node& node, std::string_view path,
                               std::string_view msg) const {
    throw ParseError(where(node) + std::string(path) + ": " + std::string(msg));
  }

  [[noreturn]] void fail_validation(const YAML::Node& node,
                                    std::string_view path,
                                    std::string_view msg) const {
    throw ValidationError(where(node) + std::string(path) + ": " +
                          std::string(msg));
  }

  // Rejects keys outside `allowed`, and requires every key in `required`.
  void check_keys(const YAML::Node& map, std::string_view path,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {}) const {
    if (!map.IsMap()) fail_parse(map, path, "expected a mapping");
    std::set<std::string, std::less<>> allowed;
    for (auto k : required) allowed.emplace(k);
    for (auto k : optional) allowed.emplace(k);
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) {
        fail_parse(kv.first, join(path, key), "unknown key");
      }
    }
    for (auto k : required) {
      if (!map[std::string(k)]) {
        fail_parse(map, join(path, k), "required key is missing");
      }
    }
  }

  double number(const YAML::Node& map, std::string_view path,
                std::string_view key) const {
    const YAML::Node node = map[std::string(key)];
    const std::string full = join(path, key);
    if (!node.IsScalar()) fail_parse(node, full, "expected a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail_parse(node, full, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  std::string where(const YAML::Node& node) const {
    const auto mark = node.Mark();
    if (mark.is_null()) return fmt::format("{}: ", origin_);
    return fmt::format("{}:{}:{}: ", origin_, mark.line + 1, mark.column + 1);
  }

  static std::string join(std::string_view path, std::string_view key) {
    if (path.empty()) return std::string(key);
    return fmt::format("{}.{}", path, key);
  }

 private:
  std::string origin_;
};

template <typename Fn>
void validated(const Reader& r, const YAML::Node& node, std::string_view path,
               Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    r.fail_validation(node, path, e.what());
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

LoadedScenario parse_scenario(std::string_view text, std::string_view origin) {
  const Reader r(origin);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(fmt::format("{}:{}:{}: {}", origin, e.mark.line + 1,
                                 e.mark.column + 1, e.msg));
  }
  r.check_keys(root, "", {"task", "radio", "edge", "qos", "grid", "users"},
               {"fit", "caps"});

  LoadedScenario out;
  optimizer::Scenario& s = out.scenario;

  const YAML::Node task = root["task"];
  r.check_keys(task, "task", {"L_a_bits", "mu_a_cycles"});
  s.task.input_bits = r.number(task, "task", "L_a_bits");
  s.task.cycles_per_job = r.number(task, "task", "mu_a_cycles");
  validated(r, task, "task", [&] { s.task.validate(); });

  const YAML::Node radio = root["radio"];
  r.check_keys(radio, "radio", {"B_hz", "p_w", "gt_dbi", "gr_dbi", "noise_dbm"});
  s.radio.bandwidth_hz = r.number(radio, "radio", "B_hz");
  s.radio.tx_power_w = r.number(radio, "radio", "p_w");
  s.radio.tx_gain_dbi = r.number(radio, "radio", "gt_dbi");
  s.radio.rx_gain_dbi = r.number(radio, "radio", "gr_dbi");
  s.radio.noise_dbm = r.number(radio, "radio", "noise_dbm");
  validated(r, radio, "radio", [&] { s.radio.validate(); });

  const YAML::Node edge = root["edge"];
  r.check_keys(edge, "edge", {"f_m_cycles_per_s"});
  s.edge.cpu_hz = r.number(edge, "edge", "f_m_cycles_per_s");
  validated(r, edge, "edge", [&] { s.edge.validate(); });

  const YAML::Node qos = root["qos"];
  r.check_keys(qos, "qos", {"epsilon_s", "theta_th"});
  s.qos.delay_s = r.number(qos, "qos", "epsilon_s");
  s.qos.reliability = r.number(qos, "qos", "theta_th");
  validated(r, qos, "qos", [&] { s.qos.validate(); });

  const YAML::Node grid = root["grid"];
  r.check_keys(grid, "grid", {"freqs_ghz"});
  const YAML::Node freqs = grid["freqs_ghz"];
  if (!freqs.IsSequence() || freqs.size() == 0) {
    r.fail_parse(freqs, "grid.freqs_ghz", "expected a non-empty list");
  }
  std::vector<double> ghz;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const YAML::Node f = freqs[i];
    const std::string path = fmt::format("grid.freqs_ghz[{}]", i);
    if (!f.IsScalar()) r.fail_parse(f, path, "expected a number");
    try {
      ghz.push_back(f.as<double>());
    } catch (const YAML::Exception&) {
      r.fail_parse(f, path, "expected a number, got '" + f.Scalar() + "'");
    }
  }
  validated(r, freqs, "grid.freqs_ghz",
            [&] { s.grid = channel::FrequencyGrid(std::move(ghz)); });
  if (!s.grid.within_sorted_matching_range()) {
    out.warnings.push_back(fmt::format(
        "{}grid.freqs_ghz: frequencies above {} GHz; sorted frequency "
        "matching is not guaranteed optimal there",
        r.where(freqs), channel::kSortedMatchingMaxGhz));
  }

  const YAML::Node users = root["users"];
  if (!users.IsSequence() || users.size() == 0) {
    r.fail_parse(users, "users", "expected a non-empty list");
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    const YAML::Node u = users[i];
    const std::string path = fmt::format("users[{}]", i);
    r.check_keys(u, path, {"lambda_jobs_per_s", "f_l_cycles_per_s"});
    reliability::UserProfile profile;
    profile.arrival_rate = r.number(u, path, "lambda_jobs_per_s");
    profile.cpu_hz = r.number(u, path, "f_l_cycles_per_s");
    validated(r, u, path, [&] { profile.validate(); });
    s.users.push_back(profile);
  }

  if (const YAML::Node fit = root["fit"]) {
    if (!fit.IsSequence() || fit.size() != channel::GaussianFit::kTerms) {
      r.fail_parse(fit, "fit", "expected a list of exactly 7 terms");
    }
    std::array<channel::GaussianTerm, channel::GaussianFit::kTerms> terms{};
    for (std::size_t i = 0; i < fit.size(); ++i) {
      const YAML::Node t = fit[i];
      const std::string path = fmt::format("fit[{}]", i);
      r.check_keys(t, path, {"a_db_per_km", "b_ghz", "c_ghz"});
      terms[i] = {r.number(t, path, "a_db_per_km"), r.number(t, path, "b_ghz"),
                  r.number(t, path, "c_ghz")};
    }
    validated(r, fit, "fit", [&] { s.fit = channel::GaussianFit(terms); });
  }

  if (const YAML::Node caps = root["caps"]) {
    r.check_keys(caps, "caps", {}, {"max_distance_m"});
    if (caps["max_distance_m"]) {
      s.max_distance_m = r.number(caps, "caps", "max_distance_m");
    }
  }

  validated(r, root, "scenario", [&] { s.validate(); });
  out.content_hash = fnv1a64(text);
  return out;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

}  // namespace thz::cli
