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

#include "skylink/env/scenario_io.h"

#include "skylink/common/error.h"

namespace skylink::env {

nlohmann::json ScenarioToJson(const ScenarioConfig& cfg) {
  return {{"name", cfg.name},
          {"n_aircraft", cfg.n_aircraft},
          {"n_ground", cfg.n_ground},
          {"horizon", cfg.horizon},
          {"comm_range", cfg.comm_range},
          {"world_side", cfg.world_side},
          {"v_max", cfg.v_max},
          {"max_links", cfg.max_links}};
}

ScenarioConfig ScenarioFromJson(const nlohmann::json& j) {
  ScenarioConfig cfg;
  try {
    cfg.name = j.value("name", std::string{});
    cfg.n_aircraft = j.at("n_aircraft").get<int>();
    cfg.n_ground = j.at("n_ground").get<int>();
    cfg.horizon = j.at("horizon").get<int>();
    cfg.comm_range = j.at("comm_range").get<double>();
    cfg.world_side = j.at("world_side").get<double>();
    cfg.v_max = j.at("v_max").get<double>();
    cfg.max_links = j.value("max_links", 2);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

ScenarioConfig LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scenario " + path.string() + ": " + e.what());
  }
  return ScenarioFromJson(j);
}

void SaveScenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write scenario file " + path.string());
  out << ScenarioToJson(cfg).dump(2) << '\n';
}

nlohmann::json TrajectoryRecord(const WorldState& world, const std::vector<int>& ptg,
                                double reward) {
  nlohmann::json positions = nlohmann::json::array();
  for (const Entity& e : world.entities) positions.push_back({e.pos.x, e.pos.y});
  nlohmann::json links = nlohmann::json::array();
  for (const auto& [a, b] : world.links.edges()) links.push_back({a, b});
  return {{"t", world.t}, {"positions", positions}, {"links", links}, {"ptg", ptg},
          {"reward", reward}};
}

TrajectoryWriter::TrajectoryWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw ConfigError("cannot open trajectory file " + path.string());
}

void TrajectoryWriter::Write(const WorldState& world, const std::vector<int>& ptg,
                             double reward) {
  out_ << TrajectoryRecord(world, ptg, reward).dump() << '\n';
  out_.flush();
}

}  // namespace skylink::env
