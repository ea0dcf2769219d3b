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

#ifndef SKYLINK_EXP_REGISTRY_H_
#define SKYLINK_EXP_REGISTRY_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "skylink/env/world.h"
#include "skylink/mappo/critic.h"

namespace skylink::exp {

// A named critic configuration: NN-X (two hidden layers of width X) or
// VQC-L{N,A} (L reuploading layers, identity or arctangent scaling).
struct Solution {
  std::string name;
  mappo::CriticArch arch;

  bool quantum() const { return arch.kind == mappo::CriticKind::kQuantum; }
};

// Throws ConfigError for unknown names.
Solution ResolveSolution(std::string_view name);
const std::vector<std::string>& SolutionNames();

struct SolutionPair {
  std::string classical;
  std::string quantum;
};

struct ScenarioPreset {
  std::string name;
  int n_aircraft = 0;
  int n_ground = 0;
  // Mean CR of uniform-random agents that calibration aims for.
  double cr_rand = 0.0;
  double calibration_tolerance = 0.0;
  // Each group is {NN-X, VQC-LN, VQC-LA} with matched weight budgets.
  std::vector<std::array<std::string, 3>> groups;

  double cs_threshold() const { return 1.25 * cr_rand; }
  std::vector<SolutionPair> Pairs() const;
  // Uncalibrated config carrying the preset's name and fleet sizes.
  env::ScenarioConfig Base() const;
};

const std::vector<ScenarioPreset>& Presets();
// Throws ConfigError for unknown names.
const ScenarioPreset& FindPreset(std::string_view name);

// `spec` is either a path to a scenario JSON file or a preset name looked up
// as <dir>/<name>.json.
env::ScenarioConfig LoadScenarioSpec(const std::string& spec, const std::filesystem::path& dir);

}  // namespace skylink::exp

#endif  // SKYLINK_EXP_REGISTRY_H_
