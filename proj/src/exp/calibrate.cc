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

#include "skylink/exp/calibrate.h"

#include <cmath>
#include <cstdio>
#include <limits>

#include "skylink/common/rng.h"
#include "skylink/mappo/evaluate.h"

namespace skylink::exp {

namespace {

// Grid values are rounded to the micro scale so they print and persist cleanly.
double GridPoint(double lo, double step, int i) {
  return std::round((lo + step * i) * 1e6) / 1e6;
}

void Sweep(const env::ScenarioConfig& base, double lo, double hi, double step, int episodes,
           std::uint64_t seed, std::vector<CalibrationRow>& rows) {
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    env::ScenarioConfig cfg = base;
    cfg.comm_range = GridPoint(lo, step, i);
    if (!(cfg.comm_range > 0.0)) continue;
    rows.push_back(MeasureRandomBaseline(cfg, episodes, seed));
  }
}

const CalibrationRow* Nearest(const std::vector<CalibrationRow>& rows, double target,
                              int min_episodes) {
  const CalibrationRow* best = nullptr;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const CalibrationRow& r : rows) {
    if (r.episodes < min_episodes) continue;
    const double gap = std::abs(r.cr_mean - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = &r;
    }
  }
  return best;
}

// Linear interpolation between the first pair of neighbouring rows that
// straddles the target; the nearest row when none does.
double Bracket(const std::vector<CalibrationRow>& rows, double target) {
  for (size_t i = 1; i < rows.size(); ++i) {
    const CalibrationRow& a = rows[i - 1];
    const CalibrationRow& b = rows[i];
    if (a.cr_mean <= target && b.cr_mean >= target && b.cr_mean > a.cr_mean) {
      return a.comm_range + (b.comm_range - a.comm_range) * (target - a.cr_mean) / (b.cr_mean - a.cr_mean);
    }
  }
  return Nearest(rows, target, 0)->comm_range;
}

}  // namespace

CalibrationRow MeasureRandomBaseline(const env::ScenarioConfig& cfg, int episodes,
                                     std::uint64_t seed) {
  Require(episodes >= 2, "MeasureRandomBaseline: need at least two episodes");
  mappo::UniformRandomPolicy policy(cfg.action_dim(), DeriveSeed(seed, 1));
  const mappo::EvalResult r = mappo::Evaluate(policy, cfg, episodes, DeriveSeed(seed, 2));
  return {cfg.comm_range, r.cr_mean, r.cr_std, episodes};
}

CalibrationResult Calibrate(const env::ScenarioConfig& base, double target, double tolerance,
                            const CalibrationOptions& options) {
  Require(target > 0.0, "Calibrate: target must be positive");
  Require(tolerance > 0.0, "Calibrate: tolerance must be positive");
  Require(options.range_lo > 0.0 && options.range_hi > options.range_lo,
          "Calibrate: invalid range");
  base.Validate();

  CalibrationResult result;
  Sweep(base, options.range_lo, options.range_hi, options.coarse_step, options.coarse_episodes,
        options.seed, result.sweep);
  const double center = Bracket(result.sweep, target);
  const double lo = std::max(options.fine_step, center - options.fine_halfwidth);
  Sweep(base, lo, center + options.fine_halfwidth, options.fine_step, options.fine_episodes,
        options.seed, result.sweep);

  const CalibrationRow* best = Nearest(result.sweep, target, options.fine_episodes);
  if (best == nullptr || std::abs(best->cr_mean - target) > tolerance) {
    char msg[160];
    std::snprintf(msg, sizeof(msg), "no comm_range reaches random CR %.2f within %.2f", target,
                  tolerance);
    throw CalibrationError(msg, result.sweep);
  }
  result.chosen = *best;
  result.config = base;
  result.config.comm_range = best->comm_range;
  return result;
}

std::string SweepTableCsv(const std::vector<CalibrationRow>& rows) {
  std::string out = "comm_range,cr_mean,cr_std,episodes\n";
  char line[128];
  for (const CalibrationRow& r : rows) {
    std::snprintf(line, sizeof(line), "%.6f,%.4f,%.4f,%d\n", r.comm_range, r.cr_mean, r.cr_std,
                  r.episodes);
    out += line;
  }
  return out;
}

}  // namespace skylink::exp
