// Copyright 2026 The Skylink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skylink/exp/registry.h"

#include <algorithm>
#include <charconv>

#include "skylink/common/error.h"
#include "skylink/env/scenario_io.h"

namespace skylink::exp {

namespace {

constexpr std::array<int, 5> kClassicalWidths = {4, 7, 8, 10, 11};

bool ParseInt(std::string_view text, int& value) {
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

}  // namespace

Solution ResolveSolution(std::string_view name) {
  const std::string label(name);
  if (name.starts_with("NN-")) {
    int width = 0;
    if (ParseInt(name.substr(3), width) &&
        std::find(kClassicalWidths.begin(), kClassicalWidths.end(), width) != kClassicalWidths.end()) {
      return {label, mappo::CriticArch::Classical(width)};
    }
  } else if (name.starts_with("VQC-") && name.size() == 6) {
    const int layers = name[4] - '0';
    const char suffix = name[5];
    if (layers >= 1 && layers <= 3 && (suffix == 'N' || suffix == 'A')) {
      const auto scaling = suffix == 'N' ? qsim::ScalingFn::kIdentity : qsim::ScalingFn::kArctan;
      return {label, mappo::CriticArch::Quantum(layers, scaling)};
    }
  }
  throw ConfigError("unknown solution '" + label + "'");
}

const std::vector<std::string>& SolutionNames() {
  static const std::vector<std::string> names = {"NN-4",   "NN-7",   "NN-8",   "NN-10",
                                                 "NN-11",  "VQC-1N", "VQC-1A", "VQC-2N",
                                                 "VQC-2A", "VQC-3N", "VQC-3A"};
  return names;
}

std::vector<SolutionPair> ScenarioPreset::Pairs() const {
  std::vector<SolutionPair> pairs;
  for (const auto& g : groups) {
    pairs.push_back({g[0], g[1]});
    pairs.push_back({g[0], g[2]});
  }
  return pairs;
}

env::ScenarioConfig ScenarioPreset::Base() const {
  env::ScenarioConfig cfg;
  cfg.name = name;
  cfg.n_aircraft = n_aircraft;
  cfg.n_ground = n_ground;
  return cfg;
}

const std::vector<ScenarioPreset>& Presets() {
  static const std::vector<ScenarioPreset> presets = {
      {"4a1s", 4, 1, 60.20, 2.0,
       {{{"NN-4", "VQC-1N", "VQC-1A"}},
        {{"NN-7", "VQC-2N", "VQC-2A"}},
        {{"NN-10", "VQC-3N", "VQC-3A"}}}},
      {"5a2s", 5, 2, 84.88, 3.0,
       {{{"NN-4", "VQC-1N", "VQC-1A"}},
        {{"NN-8", "VQC-2N", "VQC-2A"}},
        {{"NN-11", "VQC-3N", "VQC-3A"}}}},
  };
  return presets;
}

const ScenarioPreset& FindPreset(std::string_view name) {
  for (const ScenarioPreset& p : Presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
}

env::ScenarioConfig LoadScenarioSpec(const std::string& spec, const std::filesystem::path& dir) {
  const std::filesystem::path as_path(spec);
  if (as_path.extension() == ".json") return env::LoadScenario(as_path);
  env::ScenarioConfig cfg = env::LoadScenario(dir / (spec + ".json"));
  if (cfg.name.empty()) cfg.name = spec;
  return cfg;
}

}  // namespace skylink::exp
