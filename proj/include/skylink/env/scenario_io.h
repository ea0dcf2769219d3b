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

#ifndef SKYLINK_ENV_SCENARIO_IO_H_
#define SKYLINK_ENV_SCENARIO_IO_H_

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "skylink/env/world.h"

namespace skylink::env {

// Scenario files are JSON objects with the keys n_aircraft, n_ground,
// horizon, comm_range, world_side, v_max, max_links and an optional name.
nlohmann::json ScenarioToJson(const ScenarioConfig& cfg);
ScenarioConfig ScenarioFromJson(const nlohmann::json& j);
ScenarioConfig LoadScenario(const std::filesystem::path& path);
void SaveScenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

// One JSON object per line: {t, positions, links, ptg, reward}.
class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(const std::filesystem::path& path);
  void Write(const WorldState& world, const std::vector<int>& ptg, double reward);

 private:
  std::ofstream out_;
};

nlohmann::json TrajectoryRecord(const WorldState& world, const std::vector<int>& ptg,
                                double reward);

}  // namespace skylink::env

#endif  // SKYLINK_ENV_SCENARIO_IO_H_
