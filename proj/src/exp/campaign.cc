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

#include "skylink/exp/campaign.h"

#include <fstream>
#include <memory>

#include "skylink/mappo/trainer.h"
#include "skylink/nn/checkpoint.h"

namespace skylink::exp {

std::filesystem::path CurvePath(const std::filesystem::path& root, const std::string& scenario,
                                const std::string& solution, std::uint64_t seed) {
  return root / scenario / solution / ("seed_" + std::to_string(seed) + ".csv");
}

std::filesystem::path PolicyPath(const std::filesystem::path& root, const std::string& scenario,
                                 const std::string& solution, std::uint64_t seed) {
  return root / scenario / solution / ("seed_" + std::to_string(seed) + ".policy.json");
}

RunRecord RunTraining(const Solution& solution, const env::ScenarioConfig& scenario,
                      std::uint64_t seed, long total_steps, const RunOptions& options) {
  Require(total_steps > 0, "RunTraining: total_steps must be positive");
  RunRecord record{solution.name, scenario.name, seed, {}};
  std::unique_ptr<CurveWriter> writer;
  if (!options.out_root.empty()) {
    writer = std::make_unique<CurveWriter>(
        CurvePath(options.out_root, scenario.name, solution.name, seed));
  }
  mappo::Trainer trainer(scenario, solution.arch, options.trainer, seed);
  try {
    trainer.Train(total_steps, [&](const CurvePoint& p) {
      record.curve.push_back(p);
      if (writer) writer->Append(p);
      if (options.on_point) options.on_point(record, p);
    });
  } catch (const TrainingError& e) {
    throw RunAborted(e.what(), std::move(record));
  }
  if (!options.out_root.empty()) {
    std::ofstream out(PolicyPath(options.out_root, scenario.name, solution.name, seed));
    out << nn::PolicyToJson(trainer.policy()).dump() << '\n';
  }
  return record;
}

std::vector<RunRecord> RunCampaign(const Solution& solution, const env::ScenarioConfig& scenario,
                                   const std::vector<std::uint64_t>& seeds, long total_steps,
                                   const RunOptions& options) {
  std::vector<RunRecord> records;
  for (std::uint64_t seed : seeds) {
    records.push_back(RunTraining(solution, scenario, seed, total_steps, options));
  }
  return records;
}

std::vector<RunRecord> LoadRecords(const std::filesystem::path& root, const std::string& scenario,
                                   const std::string& solution,
                                   const std::vector<std::uint64_t>& seeds) {
  std::vector<RunRecord> records;
  for (std::uint64_t seed : seeds) {
    records.push_back({solution, scenario, seed, ReadCurve(CurvePath(root, scenario, solution, seed))});
  }
  return records;
}

std::vector<Curve> Curves(const std::vector<RunRecord>& records) {
  std::vector<Curve> curves;
  curves.reserve(records.size());
  for (const RunRecord& r : records) curves.push_back(r.curve);
  return curves;
}

}  // namespace skylink::exp
