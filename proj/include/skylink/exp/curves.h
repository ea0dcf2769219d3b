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

#ifndef SKYLINK_EXP_CURVES_H_
#define SKYLINK_EXP_CURVES_H_

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skylink/mappo/trainer.h"

namespace skylink::exp {

using mappo::CurvePoint;
using Curve = std::vector<CurvePoint>;

inline constexpr char kCurveCsvHeader[] = "env_steps,cr_mean,cr_std,actor_loss,critic_loss";

// Values use the shortest representation that parses back to the same double,
// so metrics recomputed from a persisted curve are identical.
std::string FormatCurveRow(const CurvePoint& p);

// Writes the header on open and flushes after every row, so an interrupted
// run leaves a valid prefix of its curve on disk.
class CurveWriter {
 public:
  explicit CurveWriter(const std::filesystem::path& path);
  void Append(const CurvePoint& p);

 private:
  std::ofstream out_;
};

// Throws ConfigError on a missing file, wrong header or malformed row.
Curve ReadCurve(const std::filesystem::path& path);

// Per-step statistics across runs. Curves are truncated to their common
// prefix and must share their env_steps grid.
struct AggregatedCurve {
  std::vector<long> env_steps;
  std::vector<double> mean;
  std::vector<double> std;  // sample standard deviation across runs
  std::vector<double> sem;  // std / sqrt(n_runs)
  int n_runs = 0;

  size_t size() const { return env_steps.size(); }
};

AggregatedCurve Aggregate(const std::vector<Curve>& curves);

struct DerivedMetrics {
  double threshold = 0.0;  // 1.25 * cr_rand
  double mcr = 0.0;
  long mcr_steps = 0;
  // Mean of the points with env_steps > ccr_after; empty if there are none.
  std::optional<double> ccr;
  // First env_steps whose aggregated CR reaches the threshold.
  std::optional<long> cs_steps;
};

inline constexpr long kCcrAfterSteps = 1'000'000;

// Computed on the unsmoothed aggregated curve. Throws ContractViolation when
// the curve is empty.
DerivedMetrics DeriveMetrics(const AggregatedCurve& curve, double cr_rand,
                             long ccr_after = kCcrAfterSteps);

// s_0 = x_0, s_t = factor * s_{t-1} + (1 - factor) * x_t, factor in [0, 1).
std::vector<double> Ema(const std::vector<double>& x, double factor);

// Columns: env_steps,mean,std,sem,lower,upper,ema where lower/upper are
// mean -/+ sem.
std::string ExportCsv(const AggregatedCurve& curve, double ema_factor);

// {"schema": 1, "solution", "scenario", "n_runs", "ema_factor", "env_steps",
//  "mean", "std", "sem", "lower", "upper", "ema"}
nlohmann::json ExportJson(const AggregatedCurve& curve, double ema_factor,
                          const std::string& solution, const std::string& scenario);

}  // namespace skylink::exp

#endif  // SKYLINK_EXP_CURVES_H_
