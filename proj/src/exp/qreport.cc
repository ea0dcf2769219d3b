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

#include "skylink/exp/qreport.h"

#include "skylink/exp/registry.h"

namespace skylink::exp {

std::vector<qmetrics::ReportRow> QMetricsReport(const std::vector<std::string>& solutions,
                                                const QMetricsOptions& options) {
  std::vector<qmetrics::ReportRow> rows;
  for (const std::string& name : solutions) {
    const Solution solution = ResolveSolution(name);
    qmetrics::ReportRow row;
    row.circuit_id = solution.name;
    if (!solution.quantum()) {
      row.applicable = false;
      rows.push_back(row);
      continue;
    }
    row.n_layers = solution.arch.n_layers;
    row.scaling_fn = qsim::ScalingFnName(solution.arch.scaling);
    qmetrics::SamplingOptions sampling;
    sampling.n_batches = options.n_batches;
    const auto sampler = qmetrics::VqcSampler(row.n_layers, solution.arch.scaling, sampling);
    row.ent = qmetrics::EntanglementCapability(sampler, options.n_samples, options.seed,
                                               options.n_batches);
    row.expr = qmetrics::Expressibility(sampler, options.n_samples, options.n_bins, options.seed,
                                        options.n_batches);
    rows.push_back(row);
  }
  return rows;
}

std::string QMetricsCsv(const std::vector<qmetrics::ReportRow>& rows) {
  std::string out = qmetrics::ReportCsvHeader() + "\n";
  for (const auto& row : rows) out += qmetrics::ReportCsvRow(row) + "\n";
  return out;
}

}  // namespace skylink::exp
