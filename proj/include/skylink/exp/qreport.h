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

#ifndef SKYLINK_EXP_QREPORT_H_
#define SKYLINK_EXP_QREPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "skylink/qmetrics/metrics.h"

namespace skylink::exp {

struct QMetricsOptions {
  int n_samples = 5000;  // states per batch
  int n_batches = 10;
  int n_bins = 75;
  std::uint64_t seed = 0;
};

// Entanglement capability and expressibility of each solution's circuit.
// Classical solutions yield rows marked not applicable. The rows depend only
// on the circuit, so they are the same for every scenario.
std::vector<qmetrics::ReportRow> QMetricsReport(const std::vector<std::string>& solutions,
                                                const QMetricsOptions& options);

std::string QMetricsCsv(const std::vector<qmetrics::ReportRow>& rows);

}  // namespace skylink::exp

#endif  // SKYLINK_EXP_QREPORT_H_
