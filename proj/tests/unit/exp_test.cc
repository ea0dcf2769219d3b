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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "skylink/common/error.h"
#include "skylink/common/rng.h"
#include "skylink/exp/calibrate.h"
#include "skylink/exp/campaign.h"
#include "skylink/exp/curves.h"
#include "skylink/exp/qreport.h"
#include "skylink/exp/registry.h"

namespace skylink::exp {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("skylink_exp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Curve MakeCurve(const std::vector<double>& cr, long interval = 1000, long first = 1000) {
  Curve c;
  for (size_t k = 0; k < cr.size(); ++k) {
    CurvePoint p;
    p.env_steps = first + interval * static_cast<long>(k);
    p.cr_mean = cr[k];
    c.push_back(p);
  }
  return c;
}

mappo::TrainerConfig TinyTrainer() {
  mappo::TrainerConfig cfg;
  cfg.rollout_steps = 200;
  cfg.epochs = 1;
  cfg.minibatch = 128;
  cfg.eval_interval = 100;
  cfg.eval_episodes = 2;
  return cfg;
}

TEST(RegistryTest, EveryNameResolves) {
  for (const std::string& name : SolutionNames()) {
    const Solution s = ResolveSolution(name);
    EXPECT_EQ(s.name, name);
    if (name.starts_with("NN-")) {
      EXPECT_FALSE(s.quantum());
      EXPECT_EQ(s.arch.width, std::stoi(name.substr(3)));
    } else {
      EXPECT_TRUE(s.quantum());
      EXPECT_EQ(s.arch.n_layers, name[4] - '0');
      EXPECT_EQ(s.arch.scaling,
                name[5] == 'N' ? qsim::ScalingFn::kIdentity : qsim::ScalingFn::kArctan);
    }
  }
  EXPECT_EQ(SolutionNames().size(), 11u);
}

TEST(RegistryTest, UnknownNamesThrow) {
  for (const char* bad : {"NN-5", "NN-", "NN-4x", "VQC-4N", "VQC-1B", "VQC-1", "MLP-4", ""}) {
    EXPECT_THROW(ResolveSolution(bad), ConfigError) << bad;
  }
}

TEST(RegistryTest, PresetsAndThresholds) {
  const ScenarioPreset& small = FindPreset("4a1s");
  const ScenarioPreset& large = FindPreset("5a2s");
  EXPECT_DOUBLE_EQ(small.cs_threshold(), 75.25);
  EXPECT_DOUBLE_EQ(large.cs_threshold(), 106.1);
  EXPECT_EQ(small.Base().obs_dim() * small.n_aircraft, 52);
  EXPECT_EQ(large.Base().obs_dim() * large.n_aircraft, 95);
  EXPECT_EQ(small.Pairs().size(), 6u);
  EXPECT_EQ(large.Pairs()[2].classical, "NN-8");
  EXPECT_EQ(large.Pairs()[2].quantum, "VQC-2N");
  for (const auto& p : small.Pairs()) {
    EXPECT_FALSE(ResolveSolution(p.classical).quantum());
    EXPECT_TRUE(ResolveSolution(p.quantum).quantum());
  }
  EXPECT_THROW(FindPreset("3a1s"), ConfigError);
}

TEST(RegistryTest, WeightCountsMatchClosedForm) {
  for (const ScenarioPreset& preset : Presets()) {
    const int o = preset.Base().global_obs_dim();
    for (const auto& p : preset.Pairs()) {
      const int x = ResolveSolution(p.classical).arch.width;
      const int l = ResolveSolution(p.quantum).arch.n_layers;
      const mappo::WeightCount nn = ResolveSolution(p.classical).arch.Weights(o);
      const mappo::WeightCount q = ResolveSolution(p.quantum).arch.Weights(o);
      EXPECT_EQ(nn.total(), (o + 1) * x + (x + 1) * x + x + 1);
      EXPECT_EQ(q.classical, (o + 1) * 4 * l + 4 * l + 5);
      EXPECT_EQ(q.quantum, 12 * l);
    }
  }
}

TEST(RegistryTest, ShippedScenariosLoad) {
  for (const ScenarioPreset& preset : Presets()) {
    const env::ScenarioConfig cfg = LoadScenarioSpec(preset.name, SKYLINK_TEST_SCENARIO_DIR);
    EXPECT_EQ(cfg.name, preset.name);
    EXPECT_EQ(cfg.n_aircraft, preset.n_aircraft);
    EXPECT_EQ(cfg.n_ground, preset.n_ground);
  }
  EXPECT_THROW(LoadScenarioSpec("missing", SKYLINK_TEST_SCENARIO_DIR), ConfigError);
}

TEST(CalibrateTest, VanishingRangeGivesZeroReward) {
  env::ScenarioConfig cfg = FindPreset("4a1s").Base();
  cfg.comm_range = 1e-9;
  EXPECT_EQ(MeasureRandomBaseline(cfg, 300, 0).cr_mean, 0.0);
}

// Fraction of aircraft with a path to ground when every pair is in range,
// simulated directly from the nomination rules.
double FullRangeConnectedFraction(int n_air, int n_ground, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = n_air + n_ground;
  long connected = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<double>> want(n_air, std::vector<double>(n, -1.0));
    std::vector<std::vector<bool>> picks(n_air, std::vector<bool>(n, false));
    for (int a = 0; a < n_air; ++a) {
      std::vector<int> others;
      for (int e = 0; e < n; ++e) {
        if (e == a) continue;
        want[a][e] = u(rng);
        others.push_back(e);
      }
      std::sort(others.begin(), others.end(), [&](int l, int r) { return want[a][l] > want[a][r]; });
      picks[a][others[0]] = picks[a][others[1]] = true;
    }
    std::vector<std::vector<int>> adj(n);
    for (int a = 0; a < n_air; ++a) {
      for (int b = a + 1; b < n_air; ++b) {
        if (picks[a][b] && picks[b][a]) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    }
    for (int g = n_air; g < n; ++g) {
      std::vector<int> bids;
      for (int a = 0; a < n_air; ++a) {
        if (picks[a][g]) bids.push_back(a);
      }
      std::sort(bids.begin(), bids.end(), [&](int l, int r) { return want[l][g] > want[r][g]; });
      for (size_t k = 0; k < bids.size() && k < 2; ++k) {
        adj[g].push_back(bids[k]);
        adj[bids[k]].push_back(g);
      }
    }
    std::vector<bool> seen(n, false);
    std::vector<int> stack;
    for (int g = n_air; g < n; ++g) {
      seen[g] = true;
      stack.push_back(g);
    }
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (int a = 0; a < n_air; ++a) connected += seen[a];
  }
  return static_cast<double>(connected) / (static_cast<double>(trials) * n_air);
}

TEST(CalibrateTest, FullRangeCeilingMatchesNominationOracle) {
  for (const ScenarioPreset& preset : Presets()) {
    env::ScenarioConfig cfg = preset.Base();
    cfg.comm_range = 10.0;
    const CalibrationRow row = MeasureRandomBaseline(cfg, 2000, 3);
    const double ceiling = cfg.horizon * cfg.n_aircraft *
                           FullRangeConnectedFraction(cfg.n_aircraft, cfg.n_ground, 200000, 4);
    EXPECT_NEAR(row.cr_mean, ceiling, 4.0 * row.cr_std / std::sqrt(2000.0) + 0.2) << preset.name;
  }
}

TEST(CalibrateTest, SweepIsMonotoneUnderCommonRandomNumbers) {
  env::ScenarioConfig cfg = FindPreset("4a1s").Base();
  double last = -1.0;
  for (double r : {0.2, 0.4, 0.6, 0.8, 1.0, 1.5}) {
    cfg.comm_range = r;
    const double cr = MeasureRandomBaseline(cfg, 300, 5).cr_mean;
    EXPECT_GE(cr, last);
    last = cr;
  }
}

CalibrationOptions QuickOptions() {
  CalibrationOptions o;
  o.coarse_step = 0.1;
  o.coarse_episodes = 300;
  o.fine_step = 0.01;
  o.fine_halfwidth = 0.03;
  o.fine_episodes = 300;
  return o;
}

TEST(CalibrateTest, HitsTargetWithinTolerance) {
  const CalibrationResult r = Calibrate(FindPreset("4a1s").Base(), 60.20, 2.0, QuickOptions());
  EXPECT_NEAR(r.chosen.cr_mean, 60.20, 2.0);
  EXPECT_EQ(r.config.comm_range, r.chosen.comm_range);
  EXPECT_EQ(r.config.name, "4a1s");
  EXPECT_GE(r.chosen.episodes, 300);
  const CalibrationRow again = MeasureRandomBaseline(r.config, 300, 0);
  EXPECT_EQ(again.cr_mean, r.chosen.cr_mean);
}

TEST(CalibrateTest, UnreachableTargetCarriesSweep) {
  try {
    Calibrate(FindPreset("4a1s").Base(), 250.0, 1.0, QuickOptions());
    FAIL() << "expected CalibrationError";
  } catch (const CalibrationError& e) {
    EXPECT_FALSE(e.sweep().empty());
    const std::string table = SweepTableCsv(e.sweep());
    EXPECT_EQ(table.rfind("comm_range,cr_mean,cr_std,episodes\n", 0), 0u);
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), static_cast<long>(e.sweep().size()) + 1);
  }
  EXPECT_THROW(Calibrate(FindPreset("4a1s").Base(), 0.0, 1.0), ContractViolation);
}

TEST(CurveIoTest, RoundTripIsExact) {
  const fs::path path = TempDir("roundtrip") / "c.csv";
  Curve curve = MakeCurve({1.0 / 3.0, 75.25, 1e-300, 123456.789});
  curve[0].actor_loss = std::numeric_limits<double>::quiet_NaN();
  curve[1].critic_loss = -0.1;
  curve[2].cr_std = 0.30000000000000004;
  {
    CurveWriter writer(path);
    for (const CurvePoint& p : curve) writer.Append(p);
  }
  const Curve back = ReadCurve(path);
  ASSERT_EQ(back.size(), curve.size());
  for (size_t k = 0; k < curve.size(); ++k) {
    EXPECT_EQ(back[k].env_steps, curve[k].env_steps);
    EXPECT_EQ(back[k].cr_mean, curve[k].cr_mean);
    EXPECT_EQ(back[k].cr_std, curve[k].cr_std);
    EXPECT_EQ(back[k].critic_loss, curve[k].critic_loss);
  }
  EXPECT_TRUE(std::isnan(back[0].actor_loss));
  const std::string text = Slurp(path);
  EXPECT_EQ(text.rfind(std::string(kCurveCsvHeader) + "\n", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(CurveIoTest, RowsAreOnDiskBeforeTheWriterCloses) {
  const fs::path path = TempDir("flush") / "c.csv";
  CurveWriter writer(path);
  EXPECT_TRUE(ReadCurve(path).empty());
  writer.Append(MakeCurve({5.0})[0]);
  writer.Append(MakeCurve({6.0}, 1000, 2000)[0]);
  EXPECT_EQ(ReadCurve(path).size(), 2u);
}

TEST(CurveIoTest, RejectsBadFiles) {
  const fs::path dir = TempDir("bad");
  EXPECT_THROW(ReadCurve(dir / "missing.csv"), ConfigError);
  std::ofstream(dir / "header.csv") << "steps,cr\n1000,5\n";
  EXPECT_THROW(ReadCurve(dir / "header.csv"), ConfigError);
  std::ofstream(dir / "row.csv") << kCurveCsvHeader << "\n1000,abc,0,0,0\n";
  EXPECT_THROW(ReadCurve(dir / "row.csv"), ConfigError);
  std::ofstream(dir / "fields.csv") << kCurveCsvHeader << "\n1000,1,0,0\n";
  EXPECT_THROW(ReadCurve(dir / "fields.csv"), ConfigError);
}

TEST(AggregateTest, MatchesRecomputation) {
  Rng rng(1);
  std::vector<Curve> curves;
  for (int s = 0; s < 3; ++s) {
    std::vector<double> cr(40);
    for (double& v : cr) v = Uniform(rng, 0.0, 200.0);
    curves.push_back(MakeCurve(cr));
  }
  const AggregatedCurve agg = Aggregate(curves);
  ASSERT_EQ(agg.size(), 40u);
  EXPECT_EQ(agg.n_runs, 3);
  for (size_t k = 0; k < 40; ++k) {
    const double a = curves[0][k].cr_mean, b = curves[1][k].cr_mean, c = curves[2][k].cr_mean;
    const double mean = (a + b + c) / 3.0;
    const double var = ((a - mean) * (a - mean) + (b - mean) * (b - mean) + (c - mean) * (c - mean)) / 2.0;
    EXPECT_NEAR(agg.mean[k], mean, 1e-12);
    EXPECT_NEAR(agg.std[k], std::sqrt(var), 1e-10);
    EXPECT_NEAR(agg.sem[k], std::sqrt(var) / std::sqrt(3.0), 1e-10);
  }
}

TEST(AggregateTest, TruncatesToCommonPrefix) {
  const AggregatedCurve agg = Aggregate({MakeCurve({1, 2, 3}), MakeCurve({3, 4})});
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_EQ(agg.mean[1], 3.0);
}

TEST(AggregateTest, SingleRunHasZeroSpread) {
  const AggregatedCurve agg = Aggregate({MakeCurve({1, 2})});
  EXPECT_EQ(agg.std[0], 0.0);
  EXPECT_EQ(agg.sem[1], 0.0);
}

TEST(AggregateTest, RejectsMisalignedOrEmptyInput) {
  EXPECT_THROW(Aggregate({MakeCurve({1, 2}), MakeCurve({1, 2}, 500)}), ContractViolation);
  EXPECT_THROW(Aggregate({}), ContractViolation);
}

TEST(DeriveMetricsTest, FlatCurveAtThresholdConvergesImmediately) {
  const double threshold = 1.25 * 60.20;
  const AggregatedCurve agg = Aggregate({MakeCurve(std::vector<double>(10, threshold), 1000, 0)});
  const DerivedMetrics m = DeriveMetrics(agg, 60.20);
  ASSERT_TRUE(m.cs_steps.has_value());
  EXPECT_EQ(*m.cs_steps, 0);
  EXPECT_EQ(m.mcr, threshold);
}

TEST(DeriveMetricsTest, MaxWindowAndCrossing) {
  // Points at 250k, 500k, ..., 2M.
  const AggregatedCurve agg =
      Aggregate({MakeCurve({50, 70, 76, 90, 80, 82, 84, 86}, 250000, 250000)});
  const DerivedMetrics m = DeriveMetrics(agg, 60.20);
  EXPECT_EQ(m.mcr, 90.0);
  EXPECT_EQ(m.mcr_steps, 1000000);
  ASSERT_TRUE(m.ccr.has_value());
  EXPECT_DOUBLE_EQ(*m.ccr, (80.0 + 82 + 84 + 86) / 4);
  ASSERT_TRUE(m.cs_steps.has_value());
  EXPECT_EQ(*m.cs_steps, 750000);
}

TEST(DeriveMetricsTest, ShortRunsHaveNoConvergedValue) {
  const DerivedMetrics m = DeriveMetrics(Aggregate({MakeCurve({10, 20, 30})}), 60.20);
  EXPECT_FALSE(m.ccr.has_value());
  EXPECT_FALSE(m.cs_steps.has_value());
  EXPECT_THROW(DeriveMetrics(AggregatedCurve{}, 60.20), ContractViolation);
}

TEST(DeriveMetricsTest, AveragesSeedsBeforeThresholding) {
  // Each seed crosses on its own at some point, the mean only at the end.
  const AggregatedCurve agg =
      Aggregate({MakeCurve({80, 0, 0, 80}), MakeCurve({0, 80, 0, 80}), MakeCurve({0, 0, 80, 80})});
  const DerivedMetrics m = DeriveMetrics(agg, 60.20);
  ASSERT_TRUE(m.cs_steps.has_value());
  EXPECT_EQ(*m.cs_steps, 4000);
}

TEST(DeriveMetricsTest, PersistedCurvesReproduceMetrics) {
  const fs::path root = TempDir("persist");
  Rng rng(2);
  std::vector<Curve> curves;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    std::vector<double> cr(1500);
    for (double& v : cr) v = Uniform(rng, 40.0, 100.0) / 3.0 * 1.1;
    curves.push_back(MakeCurve(cr));
    CurveWriter w(CurvePath(root, "4a1s", "NN-4", seed));
    for (const CurvePoint& p : curves.back()) w.Append(p);
  }
  const DerivedMetrics a = DeriveMetrics(Aggregate(curves), 60.20);
  const DerivedMetrics b =
      DeriveMetrics(Aggregate(Curves(LoadRecords(root, "4a1s", "NN-4", {0, 1, 2}))), 60.20);
  EXPECT_EQ(a.mcr, b.mcr);
  EXPECT_EQ(a.ccr, b.ccr);
  EXPECT_EQ(a.cs_steps, b.cs_steps);
}

TEST(EmaTest, ZeroFactorIsIdentity) {
  const std::vector<double> x = {3, 1, 4, 1, 5, 9, 2, 6};
  EXPECT_EQ(Ema(x, 0.0), x);
}

TEST(EmaTest, ConstantSeriesIsFixed) {
  for (double v : Ema(std::vector<double>(50, 7.5), 0.9)) EXPECT_DOUBLE_EQ(v, 7.5);
}

TEST(EmaTest, FollowsRecursion) {
  const std::vector<double> s = Ema({0.0, 10.0, 10.0}, 0.5);
  EXPECT_DOUBLE_EQ(s[1], 5.0);
  EXPECT_DOUBLE_EQ(s[2], 7.5);
  EXPECT_THROW(Ema({1.0}, 1.0), ContractViolation);
  EXPECT_TRUE(Ema({}, 0.3).empty());
}

TEST(ExportTest, CsvBandsAreStandardErrors) {
  const AggregatedCurve agg = Aggregate({MakeCurve({60, 70}), MakeCurve({66, 80}), MakeCurve({63, 90})});
  const std::string csv = ExportCsv(agg, 0.0);
  EXPECT_EQ(csv.rfind("env_steps,mean,std,sem,lower,upper,ema\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  const nlohmann::json j = ExportJson(agg, 0.5, "NN-4", "4a1s");
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["n_runs"], 3);
  EXPECT_NEAR(j["sem"][0].get<double>(), 3.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(j["sem"][1].get<double>(), 10.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(j["upper"][1].get<double>(), 80.0 + 10.0 / std::sqrt(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(j["ema"][1].get<double>(), 0.5 * 63 + 0.5 * 80);
}

TEST(CampaignTest, OnePointPerIntervalAndPersisted) {
  const fs::path root = TempDir("campaign");
  env::ScenarioConfig scenario = FindPreset("4a1s").Base();
  scenario.comm_range = 0.635;
  RunOptions options;
  options.trainer = TinyTrainer();
  options.out_root = root;
  const auto records = RunCampaign(ResolveSolution("NN-4"), scenario, {0, 1, 2}, 1000, options);
  ASSERT_EQ(records.size(), 3u);
  for (const RunRecord& r : records) {
    ASSERT_EQ(r.curve.size(), 10u);
    EXPECT_EQ(r.curve.back().env_steps, 1000);
    const Curve disk = ReadCurve(CurvePath(root, "4a1s", "NN-4", r.seed));
    ASSERT_EQ(disk.size(), r.curve.size());
    for (size_t k = 0; k < disk.size(); ++k) EXPECT_EQ(disk[k].cr_mean, r.curve[k].cr_mean);
    EXPECT_TRUE(fs::exists(PolicyPath(root, "4a1s", "NN-4", r.seed)));
  }
}

TEST(CampaignTest, SameSeedSameCurve) {
  env::ScenarioConfig scenario = FindPreset("4a1s").Base();
  scenario.comm_range = 0.635;
  RunOptions options;
  options.trainer = TinyTrainer();
  for (const char* name : {"NN-4", "VQC-1A"}) {
    const RunRecord a = RunTraining(ResolveSolution(name), scenario, 7, 600, options);
    const RunRecord b = RunTraining(ResolveSolution(name), scenario, 7, 600, options);
    ASSERT_EQ(a.curve.size(), b.curve.size());
    for (size_t k = 0; k < a.curve.size(); ++k) {
      EXPECT_EQ(a.curve[k].cr_mean, b.curve[k].cr_mean);
      EXPECT_EQ(FormatCurveRow(a.curve[k]), FormatCurveRow(b.curve[k]));
    }
  }
}

TEST(CampaignTest, DivergingRunKeepsPartialCurve) {
  const fs::path root = TempDir("abort");
  env::ScenarioConfig scenario = FindPreset("4a1s").Base();
  scenario.comm_range = 0.635;
  RunOptions options;
  options.trainer = TinyTrainer();
  options.trainer.learning_rate = 1e300;
  options.out_root = root;
  try {
    RunTraining(ResolveSolution("NN-4"), scenario, 0, 100000, options);
    FAIL() << "expected RunAborted";
  } catch (const RunAborted& e) {
    EXPECT_FALSE(e.partial().curve.empty());
    EXPECT_LT(e.partial().curve.back().env_steps, 100000);
    EXPECT_EQ(ReadCurve(CurvePath(root, "4a1s", "NN-4", 0)).size(), e.partial().curve.size());
  }
}

TEST(QReportTest, RowsForQuantumAndClassicalSolutions) {
  QMetricsOptions options;
  options.n_samples = 400;
  options.n_batches = 3;
  const auto rows = QMetricsReport({"VQC-1N", "NN-4", "VQC-1A"}, options);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].applicable);
  EXPECT_NEAR(rows[0].ent.mean, 0.8476, 0.04);
  EXPECT_EQ(rows[0].n_layers, 1);
  EXPECT_FALSE(rows[1].applicable);
  EXPECT_EQ(rows[1].circuit_id, "NN-4");
  EXPECT_GT(rows[0].ent.mean, rows[2].ent.mean);
  const std::string csv = QMetricsCsv(rows);
  EXPECT_NE(csv.find("NN-4,n/a"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(QReportTest, RowsDependOnlyOnTheCircuit) {
  QMetricsOptions options;
  options.n_samples = 200;
  options.n_batches = 2;
  const std::string a = QMetricsCsv(QMetricsReport({"VQC-2A"}, options));
  const std::string b = QMetricsCsv(QMetricsReport({"VQC-2A"}, options));
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace skylink::exp
