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

#include "skylink/exp/curves.h"

#include <charconv>
#include <cmath>

#include "skylink/common/error.h"

namespace skylink::exp {

namespace {

void AppendNumber(std::string& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, r.ptr);
}

double ParseDouble(std::string_view field, const std::filesystem::path& path) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ConfigError("malformed number '" + std::string(field) + "' in " + path.string());
  }
  return v;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string FormatCurveRow(const CurvePoint& p) {
  std::string out = std::to_string(p.env_steps);
  for (double v : {p.cr_mean, p.cr_std, p.actor_loss, p.critic_loss}) {
    out += ',';
    AppendNumber(out, v);
  }
  return out;
}

CurveWriter::CurveWriter(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError("cannot open " + path.string() + " for writing");
  out_ << kCurveCsvHeader << '\n' << std::flush;
}

void CurveWriter::Append(const CurvePoint& p) { out_ << FormatCurveRow(p) << '\n' << std::flush; }

Curve ReadCurve(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open curve file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCurveCsvHeader) {
    throw ConfigError("unexpected curve header in " + path.string());
  }
  Curve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = SplitCommas(line);
    if (f.size() != 5) throw ConfigError("curve row with wrong field count in " + path.string());
    CurvePoint p;
    p.env_steps = static_cast<long>(ParseDouble(f[0], path));
    p.cr_mean = ParseDouble(f[1], path);
    p.cr_std = ParseDouble(f[2], path);
    p.actor_loss = ParseDouble(f[3], path);
    p.critic_loss = ParseDouble(f[4], path);
    curve.push_back(p);
  }
  return curve;
}

AggregatedCurve Aggregate(const std::vector<Curve>& curves) {
  Require(!curves.empty(), "Aggregate: no curves");
  size_t n = curves.front().size();
  for (const Curve& c : curves) n = std::min(n, c.size());
  AggregatedCurve agg;
  agg.n_runs = static_cast<int>(curves.size());
  const double runs = agg.n_runs;
  for (size_t k = 0; k < n; ++k) {
    const long steps = curves.front()[k].env_steps;
    double sum = 0.0;
    for (const Curve& c : curves) {
      if (c[k].env_steps != steps) throw ContractViolation("Aggregate: curves sampled at different steps");
      sum += c[k].cr_mean;
    }
    const double mean = sum / runs;
    double ss = 0.0;
    for (const Curve& c : curves) ss += (c[k].cr_mean - mean) * (c[k].cr_mean - mean);
    const double sd = agg.n_runs > 1 ? std::sqrt(ss / (runs - 1.0)) : 0.0;
    agg.env_steps.push_back(steps);
    agg.mean.push_back(mean);
    agg.std.push_back(sd);
    agg.sem.push_back(sd / std::sqrt(runs));
  }
  return agg;
}

DerivedMetrics DeriveMetrics(const AggregatedCurve& curve, double cr_rand, long ccr_after) {
  Require(curve.size() > 0, "DeriveMetrics: empty curve");
  DerivedMetrics m;
  m.threshold = 1.25 * cr_rand;
  m.mcr = curve.mean[0];
  m.mcr_steps = curve.env_steps[0];
  double ccr_sum = 0.0;
  int ccr_count = 0;
  for (size_t k = 0; k < curve.size(); ++k) {
    if (curve.mean[k] > m.mcr) {
      m.mcr = curve.mean[k];
      m.mcr_steps = curve.env_steps[k];
    }
    if (curve.env_steps[k] > ccr_after) {
      ccr_sum += curve.mean[k];
      ++ccr_count;
    }
    if (!m.cs_steps && curve.mean[k] >= m.threshold) m.cs_steps = curve.env_steps[k];
  }
  if (ccr_count > 0) m.ccr = ccr_sum / ccr_count;
  return m;
}

std::vector<double> Ema(const std::vector<double>& x, double factor) {
  Require(factor >= 0.0 && factor < 1.0, "Ema: factor must lie in [0, 1)");
  std::vector<double> s(x.size());
  for (size_t t = 0; t < x.size(); ++t) {
    s[t] = t == 0 ? x[0] : factor * s[t - 1] + (1.0 - factor) * x[t];
  }
  return s;
}

std::string ExportCsv(const AggregatedCurve& curve, double ema_factor) {
  const std::vector<double> ema = Ema(curve.mean, ema_factor);
  std::string out = "env_steps,mean,std,sem,lower,upper,ema\n";
  for (size_t k = 0; k < curve.size(); ++k) {
    out += std::to_string(curve.env_steps[k]);
    for (double v : {curve.mean[k], curve.std[k], curve.sem[k], curve.mean[k] - curve.sem[k],
                     curve.mean[k] + curve.sem[k], ema[k]}) {
      out += ',';
      AppendNumber(out, v);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json ExportJson(const AggregatedCurve& curve, double ema_factor,
                          const std::string& solution, const std::string& scenario) {
  std::vector<double> lower(curve.size()), upper(curve.size());
  for (size_t k = 0; k < curve.size(); ++k) {
    lower[k] = curve.mean[k] - curve.sem[k];
    upper[k] = curve.mean[k] + curve.sem[k];
  }
  return {{"schema", 1},
          {"solution", solution},
          {"scenario", scenario},
          {"n_runs", curve.n_runs},
          {"ema_factor", ema_factor},
          {"env_steps", curve.env_steps},
          {"mean", curve.mean},
          {"std", curve.std},
          {"sem", curve.sem},
          {"lower", lower},
          {"upper", upper},
          {"ema", Ema(curve.mean, ema_factor)}};
}

}  // namespace skylink::exp
