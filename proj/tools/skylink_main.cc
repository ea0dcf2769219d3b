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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skylink/env/scenario_io.h"
#include "skylink/exp/calibrate.h"
#include "skylink/exp/campaign.h"
#include "skylink/exp/curves.h"
#include "skylink/exp/qreport.h"
#include "skylink/exp/registry.h"
#include "skylink/mappo/evaluate.h"
#include "skylink/nn/checkpoint.h"

namespace fs = std::filesystem;
using namespace skylink;

namespace {

fs::path EnvPath(const char* var, const fs::path& fallback) {
  const char* value = std::getenv(var);
  return value && *value ? fs::path(value) : fallback;
}

fs::path DefaultOutRoot() { return EnvPath("SKYLINK_OUT_DIR", "runs"); }
fs::path ScenarioDir() { return EnvPath("SKYLINK_SCENARIO_DIR", SKYLINK_DEFAULT_SCENARIO_DIR); }

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

double BaselineFor(const env::ScenarioConfig& cfg, double override_value) {
  if (override_value > 0.0) return override_value;
  return exp::FindPreset(cfg.name).cr_rand;
}

void PrintMetrics(const std::string& solution, const exp::DerivedMetrics& m, int n_runs) {
  std::printf("%-8s runs=%d threshold=%.2f MCR=%.2f@%ld CCR=", solution.c_str(), n_runs,
              m.threshold, m.mcr, m.mcr_steps);
  if (m.ccr) std::printf("%.2f", *m.ccr); else std::printf("n/a");
  std::printf(" CS=");
  if (m.cs_steps) std::printf("%.0fk\n", *m.cs_steps / 1000.0); else std::printf("not reached\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent FANET link-control training with classical and quantum critics"};
  app.require_subcommand(1);

  std::string scenario_spec = "4a1s";
  std::vector<std::string> solutions;
  std::vector<std::uint64_t> seeds = {0, 1, 2};
  long steps = 200000;
  fs::path out_dir = DefaultOutRoot();
  int calibrate_samples = 0;
  int eval_samples = 2000;
  int qmetrics_samples = 5000;
  double ema = 0.9;
  std::uint64_t seed = 0;
  double cr_rand = 0.0;

  const auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_spec, "Preset name (4a1s, 5a2s) or scenario JSON path");
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", out_dir, "Output root (default $SKYLINK_OUT_DIR or ./runs)");
  };

  auto* calibrate = app.add_subcommand("calibrate", "Fit comm_range to the random-agent CR target");
  add_scenario(calibrate);
  add_out(calibrate);
  double target = 0.0, tolerance = 0.0;
  calibrate->add_option("--target", target, "Target random-agent CR (default: preset value)");
  calibrate->add_option("--tolerance", tolerance, "Allowed |CR - target| (default: preset value)");
  calibrate->add_option("--samples", calibrate_samples, "Episodes per fine-grid candidate");
  calibrate->add_option("--seed", seed, "Seed for worlds and random actions");

  auto* train = app.add_subcommand("train", "Train one solution over several seeds");
  add_scenario(train);
  add_out(train);
  train->add_option("--solution", solutions, "Solution names")->delimiter(',')->required();
  train->add_option("--seeds", seeds, "Comma-separated seeds")->delimiter(',');
  train->add_option("--steps", steps, "Environment steps per seed");

  auto* eval = app.add_subcommand("eval", "Evaluate random agents or a saved policy");
  add_scenario(eval);
  std::string policy_path;
  eval->add_option("--policy", policy_path, "Policy checkpoint JSON (default: uniform random)");
  eval->add_option("--samples", eval_samples, "Episodes")->capture_default_str();
  eval->add_option("--seed", seed, "Evaluation seed");

  auto* metrics = app.add_subcommand("metrics", "MCR, CCR and CS from persisted curves");
  add_scenario(metrics);
  add_out(metrics);
  metrics->add_option("--solution", solutions, "Solution names")->delimiter(',')->required();
  metrics->add_option("--seeds", seeds, "Comma-separated seeds")->delimiter(',');
  metrics->add_option("--cr-rand", cr_rand, "Random-agent CR (default: preset value)");

  auto* qmetrics = app.add_subcommand("qmetrics", "Entanglement and expressibility report (CSV)");
  qmetrics->add_option("--solution", solutions, "Solution names")->delimiter(',');
  qmetrics->add_option("--samples", qmetrics_samples, "States per batch")->capture_default_str();
  qmetrics->add_option("--seed", seed, "Sampling seed");
  std::string qmetrics_out;
  qmetrics->add_option("--out", qmetrics_out, "Write the CSV here instead of stdout");

  auto* exporter = app.add_subcommand("export", "Aggregated, smoothed curves for plotting");
  add_scenario(exporter);
  add_out(exporter);
  exporter->add_option("--solution", solutions, "Solution names")->delimiter(',')->required();
  exporter->add_option("--seeds", seeds, "Comma-separated seeds")->delimiter(',');
  exporter->add_option("--ema", ema, "EMA factor in [0, 1)");
  std::string format = "csv";
  exporter->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*calibrate) {
      const exp::ScenarioPreset& preset = exp::FindPreset(scenario_spec);
      exp::CalibrationOptions options;
      options.seed = seed;
      if (calibrate_samples > 0) options.fine_episodes = calibrate_samples;
      const double t = target > 0.0 ? target : preset.cr_rand;
      const double tol = tolerance > 0.0 ? tolerance : preset.calibration_tolerance;
      const fs::path sweep_path = out_dir / "calibration" / (preset.name + "_sweep.csv");
      try {
        const exp::CalibrationResult r = exp::Calibrate(preset.Base(), t, tol, options);
        WriteFile(sweep_path, exp::SweepTableCsv(r.sweep));
        const fs::path scenario_path = out_dir / "calibration" / (preset.name + ".json");
        env::SaveScenario(r.config, scenario_path);
        std::printf("%s: comm_range=%.6f CR=%.3f (std %.3f, %d episodes), target %.2f +/- %.2f\n",
                    preset.name.c_str(), r.chosen.comm_range, r.chosen.cr_mean, r.chosen.cr_std,
                    r.chosen.episodes, t, tol);
        std::printf("wrote %s and %s\n", scenario_path.c_str(), sweep_path.c_str());
      } catch (const exp::CalibrationError& e) {
        WriteFile(sweep_path, exp::SweepTableCsv(e.sweep()));
        std::fprintf(stderr, "calibration failed: %s\n%s", e.what(),
                     exp::SweepTableCsv(e.sweep()).c_str());
        return 2;
      }
    } else if (*train) {
      const env::ScenarioConfig scenario = exp::LoadScenarioSpec(scenario_spec, ScenarioDir());
      exp::RunOptions options;
      options.out_root = out_dir;
      options.on_point = [](const exp::RunRecord& r, const exp::CurvePoint& p) {
        if (p.env_steps % 10000 == 0) {
          std::printf("%s seed %llu step %ld CR %.2f\n", r.solution.c_str(),
                      static_cast<unsigned long long>(r.seed), p.env_steps, p.cr_mean);
          std::fflush(stdout);
        }
      };
      for (const std::string& name : solutions) {
        const exp::Solution solution = exp::ResolveSolution(name);
        try {
          exp::RunCampaign(solution, scenario, seeds, steps, options);
        } catch (const exp::RunAborted& e) {
          std::fprintf(stderr, "%s seed %llu aborted after %zu curve points: %s\n", name.c_str(),
                       static_cast<unsigned long long>(e.partial().seed), e.partial().curve.size(),
                       e.what());
          return 3;
        }
      }
    } else if (*eval) {
      const env::ScenarioConfig scenario = exp::LoadScenarioSpec(scenario_spec, ScenarioDir());
      mappo::EvalResult r;
      if (policy_path.empty()) {
        const exp::CalibrationRow row = exp::MeasureRandomBaseline(scenario, eval_samples, seed);
        r.cr_mean = row.cr_mean;
        r.cr_std = row.cr_std;
      } else {
        std::ifstream in(policy_path);
        if (!in) throw ConfigError("cannot open " + policy_path);
        mappo::MeanActionPolicy policy(nn::PolicyFromJson(nlohmann::json::parse(in)));
        r = mappo::Evaluate(policy, scenario, eval_samples, seed);
      }
      std::printf("%s comm_range=%.6f episodes=%d CR=%.3f std=%.3f sem=%.3f\n",
                  scenario.name.c_str(), scenario.comm_range, eval_samples, r.cr_mean, r.cr_std,
                  r.cr_std / std::sqrt(static_cast<double>(eval_samples)));
    } else if (*metrics) {
      const env::ScenarioConfig scenario = exp::LoadScenarioSpec(scenario_spec, ScenarioDir());
      const double baseline = BaselineFor(scenario, cr_rand);
      for (const std::string& name : solutions) {
        const auto records = exp::LoadRecords(out_dir, scenario.name, name, seeds);
        const exp::AggregatedCurve agg = exp::Aggregate(exp::Curves(records));
        PrintMetrics(name, exp::DeriveMetrics(agg, baseline), agg.n_runs);
      }
    } else if (*qmetrics) {
      if (solutions.empty()) solutions = exp::SolutionNames();
      exp::QMetricsOptions options;
      options.n_samples = qmetrics_samples;
      options.seed = seed;
      const std::string csv = exp::QMetricsCsv(exp::QMetricsReport(solutions, options));
      if (qmetrics_out.empty()) std::fputs(csv.c_str(), stdout); else WriteFile(qmetrics_out, csv);
    } else if (*exporter) {
      const env::ScenarioConfig scenario = exp::LoadScenarioSpec(scenario_spec, ScenarioDir());
      for (const std::string& name : solutions) {
        const auto records = exp::LoadRecords(out_dir, scenario.name, name, seeds);
        const exp::AggregatedCurve agg = exp::Aggregate(exp::Curves(records));
        const fs::path base = out_dir / "export" / scenario.name / name;
        const fs::path path = base.string() + "." + format;
        WriteFile(path, format == "csv" ? exp::ExportCsv(agg, ema)
                                        : exp::ExportJson(agg, ema, name, scenario.name).dump(2) + "\n");
        std::printf("wrote %s\n", path.c_str());
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
