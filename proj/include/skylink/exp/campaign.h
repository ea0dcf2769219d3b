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

#ifndef SKYLINK_EXP_CAMPAIGN_H_
#define SKYLINK_EXP_CAMPAIGN_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skylink/common/error.h"
#include "skylink/env/world.h"
#include "skylink/exp/curves.h"
#include "skylink/exp/registry.h"
#include "skylink/mappo/config.h"

namespace skylink::exp {

struct RunRecord {
  std::string solution;
  std::string scenario;
  std::uint64_t seed = 0;
  Curve curve;
};

// A run stopped by a numerical failure; the record holds the curve up to
// that point, which is also on disk when the run was persisted.
class RunAborted : public TrainingError {
 public:
  RunAborted(const std::string& message, RunRecord partial)
      : TrainingError(message), partial_(std::move(partial)) {}
  const RunRecord& partial() const { return partial_; }

 private:
  RunRecord partial_;
};

// <root>/<scenario>/<solution>/seed_<seed>.csv
std::filesystem::path CurvePath(const std::filesystem::path& root, const std::string& scenario,
                                const std::string& solution, std::uint64_t seed);
// Final actor next to the curve: seed_<seed>.policy.json
std::filesystem::path PolicyPath(const std::filesystem::path& root, const std::string& scenario,
                                 const std::string& solution, std::uint64_t seed);

struct RunOptions {
  mappo::TrainerConfig trainer;
  // Empty: keep curves in memory only.
  std::filesystem::path out_root;
  std::function<void(const RunRecord&, const CurvePoint&)> on_point;
};

// Trains one seed. Throws RunAborted if training gives up.
RunRecord RunTraining(const Solution& solution, const env::ScenarioConfig& scenario,
                      std::uint64_t seed, long total_steps, const RunOptions& options);

// One record per seed, run in order.
std::vector<RunRecord> RunCampaign(const Solution& solution, const env::ScenarioConfig& scenario,
                                   const std::vector<std::uint64_t>& seeds, long total_steps,
                                   const RunOptions& options);

// Reads persisted curves back. Throws ConfigError if any file is missing.
std::vector<RunRecord> LoadRecords(const std::filesystem::path& root, const std::string& scenario,
                                   const std::string& solution,
                                   const std::vector<std::uint64_t>& seeds);

std::vector<Curve> Curves(const std::vector<RunRecord>& records);

}  // namespace skylink::exp

#endif  // SKYLINK_EXP_CAMPAIGN_H_
