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

#ifndef SKYLINK_EXP_CALIBRATE_H_
#define SKYLINK_EXP_CALIBRATE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skylink/common/error.h"
#include "skylink/env/world.h"

namespace skylink::exp {

struct CalibrationRow {
  double comm_range = 0.0;
  double cr_mean = 0.0;
  double cr_std = 0.0;
  int episodes = 0;
};

// Coarse sweep over [range_lo, range_hi], then a fine sweep around the
// interpolated crossing of the coarse curve with the target. Every candidate sees the same worlds and random actions.
struct CalibrationOptions {
  double range_lo = 0.1;
  double range_hi = 1.0;
  double coarse_step = 0.05;
  int coarse_episodes = 1000;
  double fine_step = 0.0025;
  double fine_halfwidth = 0.03;
  int fine_episodes = 4000;
  std::uint64_t seed = 0;
};

class CalibrationError : public ConfigError {
 public:
  CalibrationError(const std::string& message, std::vector<CalibrationRow> sweep)
      : ConfigError(message), sweep_(std::move(sweep)) {}
  const std::vector<CalibrationRow>& sweep() const { return sweep_; }

 private:
  std::vector<CalibrationRow> sweep_;
};

struct CalibrationResult {
  env::ScenarioConfig config;
  CalibrationRow chosen;
  std::vector<CalibrationRow> sweep;
};

// Mean CR of uniform-random agents over `episodes` episodes.
CalibrationRow MeasureRandomBaseline(const env::ScenarioConfig& cfg, int episodes,
                                     std::uint64_t seed);

// Picks the comm_range whose random-agent CR is nearest `target`. Throws
// CalibrationError when no candidate lies within `tolerance`.
CalibrationResult Calibrate(const env::ScenarioConfig& base, double target, double tolerance,
                            const CalibrationOptions& options = {});

// "comm_range,cr_mean,cr_std,episodes" followed by one line per row.
std::string SweepTableCsv(const std::vector<CalibrationRow>& rows);

}  // namespace skylink::exp

#endif  // SKYLINK_EXP_CALIBRATE_H_
