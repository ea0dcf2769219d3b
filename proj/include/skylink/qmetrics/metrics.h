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

#ifndef SKYLINK_QMETRICS_METRICS_H_
#define SKYLINK_QMETRICS_METRICS_H_

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "skylink/common/rng.h"
#include "skylink/qsim/state.h"
#include "skylink/qsim/vqc.h"

namespace skylink::qmetrics {

// Tr(rho_q^2) of the reduced state of qubit q.
double SingleQubitPurity(const qsim::QuantumState& state, int q);

// Q = 2 (1 - mean_k Tr rho_k^2), in [0, 1]. Requires a normalised state.
double MeyerWallach(const qsim::QuantumState& state);

struct MetricEstimate {
  double mean = 0.0;
  double std = 0.0;  // over batch values
  int n_samples = 0;  // per batch
  int n_batches = 0;
  std::uint64_t seed = 0;
};

// Draws one output state of the circuit family under study.
using StateSampler = std::function<qsim::QuantumState(Rng&)>;

struct SamplingOptions {
  double lo = -std::numbers::pi;
  double hi = std::numbers::pi;
  int n_batches = 10;
};

// Random VQC states: raw inputs u and ansatz angles drawn uniformly from
// [lo, hi], features x = f(u). The draws do not depend on the scaling
// function, so identity and arctangent variants with one seed see the same u.
StateSampler VqcSampler(int n_layers, qsim::ScalingFn scaling, const SamplingOptions& options = {});

// Batch b uses a stream derived from (seed, b). Each batch value is the mean
// Meyer-Wallach measure over n_samples states.
MetricEstimate EntanglementCapability(const StateSampler& sampler, int n_samples,
                                      std::uint64_t seed, int n_batches = 10);

class FidelityHistogram {
 public:
  explicit FidelityHistogram(int n_bins);

  // F = 1 lands in the last bin.
  void Add(double fidelity);
  int n_bins() const { return static_cast<int>(counts_.size()); }
  const std::vector<long>& counts() const { return counts_; }
  long total() const { return total_; }
  double BinLow(int k) const { return static_cast<double>(k) / n_bins(); }
  double BinHigh(int k) const { return static_cast<double>(k + 1) / n_bins(); }
  // Empty bins get `floor` before renormalising.
  std::vector<double> Probabilities(double floor = 0.0) const;

 private:
  std::vector<long> counts_;
  long total_ = 0;
};

// (N - 1)(1 - F)^(N - 2) for Hilbert dimension N.
double HaarFidelityDensity(double fidelity, int dim);

// Haar mass per equal-width bin, integrated in closed form.
std::vector<double> HaarBinProbabilities(int n_bins, int dim);

// sum p log(p / q); terms with p = 0 contribute nothing.
double KlDivergence(const std::vector<double>& p, const std::vector<double>& q);

inline constexpr double kEmptyBinFloor = 1e-12;

enum class FidelityPairing {
  // Every distinct pair among n_samples drawn states.
  kAllPairs,
  // n_samples independent pairs, two fresh states each.
  kDisjointPairs,
};

// KL between the binned fidelity distribution of the sampled states and the
// Haar distribution, one value per batch.
MetricEstimate Expressibility(const StateSampler& sampler, int n_samples, int n_bins,
                              std::uint64_t seed, int n_batches = 10, int dim = 16,
                              FidelityPairing pairing = FidelityPairing::kAllPairs);

struct ReportRow {
  std::string circuit_id;
  int n_layers = 0;
  std::string scaling_fn;
  MetricEstimate ent;
  MetricEstimate expr;
  bool applicable = true;
};

std::string ReportCsvHeader();
// Inapplicable rows carry "n/a" in every metric column.
std::string ReportCsvRow(const ReportRow& row);

}  // namespace skylink::qmetrics

#endif  // SKYLINK_QMETRICS_METRICS_H_
