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

#include "skylink/qmetrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "skylink/common/error.h"

namespace skylink::qmetrics {

double SingleQubitPurity(const qsim::QuantumState& state, int q) {
  Require(q >= 0 && q < state.n_qubits(), "SingleQubitPurity: qubit out of range");
  const auto& amp = state.amplitudes();
  const std::size_t mask = std::size_t{1} << q;
  double p0 = 0.0, p1 = 0.0;
  qsim::Complex coherence(0.0, 0.0);
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (i & mask) continue;
    p0 += std::norm(amp[i]);
    p1 += std::norm(amp[i | mask]);
    coherence += amp[i] * std::conj(amp[i | mask]);
  }
  return p0 * p0 + p1 * p1 + 2.0 * std::norm(coherence);
}

double MeyerWallach(const qsim::QuantumState& state) {
  Require(std::abs(state.Norm() - 1.0) < 1e-8, "MeyerWallach: state is not normalised");
  double purity = 0.0;
  for (int q = 0; q < state.n_qubits(); ++q) purity += SingleQubitPurity(state, q);
  return 2.0 * (1.0 - purity / state.n_qubits());
}

StateSampler VqcSampler(int n_layers, qsim::ScalingFn scaling, const SamplingOptions& options) {
  Require(n_layers >= 1, "VqcSampler: n_layers must be >= 1");
  Require(options.hi > options.lo, "VqcSampler: empty sampling interval");
  return [=](Rng& rng) {
    std::vector<double> x(qsim::kFeaturesPerLayer * n_layers);
    std::vector<double> theta(qsim::kAnsatzParamsPerLayer * n_layers);
    for (double& v : x) v = qsim::ApplyScaling(scaling, Uniform(rng, options.lo, options.hi));
    for (double& v : theta) v = Uniform(rng, options.lo, options.hi);
    return qsim::PrepareState(n_layers, x, theta);
  };
}

namespace {

MetricEstimate Summarise(const std::vector<double>& values, int n_samples, std::uint64_t seed) {
  MetricEstimate e;
  e.n_samples = n_samples;
  e.n_batches = static_cast<int>(values.size());
  e.seed = seed;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std = std::sqrt(ss / (values.size() - 1));
  }
  return e;
}

}  // namespace

MetricEstimate EntanglementCapability(const StateSampler& sampler, int n_samples,
                                      std::uint64_t seed, int n_batches) {
  Require(n_samples >= 1 && n_batches >= 1, "EntanglementCapability: need samples");
  std::vector<double> batch_values;
  for (int b = 0; b < n_batches; ++b) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(b)));
    double sum = 0.0;
    for (int s = 0; s < n_samples; ++s) sum += MeyerWallach(sampler(rng));
    batch_values.push_back(sum / n_samples);
  }
  return Summarise(batch_values, n_samples, seed);
}

FidelityHistogram::FidelityHistogram(int n_bins) : counts_(n_bins, 0) {
  Require(n_bins >= 1, "FidelityHistogram: need at least one bin");
}

void FidelityHistogram::Add(double fidelity) {
  Require(std::isfinite(fidelity), "FidelityHistogram: non-finite fidelity");
  const double f = std::clamp(fidelity, 0.0, 1.0);
  const int k = std::min(n_bins() - 1, static_cast<int>(f * n_bins()));
  ++counts_[k];
  ++total_;
}

std::vector<double> FidelityHistogram::Probabilities(double floor) const {
  Require(total_ > 0, "FidelityHistogram: empty");
  std::vector<double> p(counts_.size());
  double sum = 0.0;
  for (size_t k = 0; k < counts_.size(); ++k) {
    p[k] = counts_[k] > 0 ? static_cast<double>(counts_[k]) / total_ : floor;
    sum += p[k];
  }
  for (double& v : p) v /= sum;
  return p;
}

double HaarFidelityDensity(double fidelity, int dim) {
  return (dim - 1) * std::pow(1.0 - fidelity, dim - 2);
}

std::vector<double> HaarBinProbabilities(int n_bins, int dim) {
  // Mass in [lo, hi] is (1 - lo)^(N-1) - (1 - hi)^(N-1). Differencing the
  // survival function keeps the tail bins from cancelling to zero.
  std::vector<double> q(n_bins);
  for (int k = 0; k < n_bins; ++k) {
    const double lo = static_cast<double>(k) / n_bins;
    const double hi = static_cast<double>(k + 1) / n_bins;
    q[k] = std::pow(1.0 - lo, dim - 1) - std::pow(1.0 - hi, dim - 1);
  }
  return q;
}

double KlDivergence(const std::vector<double>& p, const std::vector<double>& q) {
  Require(p.size() == q.size(), "KlDivergence: size mismatch");
  double kl = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    Require(q[k] > 0.0, "KlDivergence: reference has an empty bin");
    kl += p[k] * std::log(p[k] / q[k]);
  }
  return std::max(0.0, kl);
}

MetricEstimate Expressibility(const StateSampler& sampler, int n_samples, int n_bins,
                              std::uint64_t seed, int n_batches, int dim,
                              FidelityPairing pairing) {
  Require(n_samples >= 2 && n_bins >= 1 && n_batches >= 1, "Expressibility: invalid sizes");
  const std::vector<double> haar = HaarBinProbabilities(n_bins, dim);
  std::vector<double> batch_values;
  for (int b = 0; b < n_batches; ++b) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(b)));
    FidelityHistogram hist(n_bins);
    if (pairing == FidelityPairing::kDisjointPairs) {
      for (int s = 0; s < n_samples; ++s) {
        const qsim::QuantumState a = sampler(rng);
        const qsim::QuantumState c = sampler(rng);
        hist.Add(a.Fidelity(c));
      }
    } else {
      std::vector<qsim::QuantumState> states;
      states.reserve(n_samples);
      for (int s = 0; s < n_samples; ++s) states.push_back(sampler(rng));
      for (int i = 0; i < n_samples; ++i) {
        for (int j = i + 1; j < n_samples; ++j) hist.Add(states[i].Fidelity(states[j]));
      }
    }
    batch_values.push_back(KlDivergence(hist.Probabilities(kEmptyBinFloor), haar));
  }
  return Summarise(batch_values, n_samples, seed);
}

std::string ReportCsvHeader() {
  return "circuit_id,L,scaling_fn,ent_mean,ent_std,expr_mean,expr_std,n_samples,seed";
}

std::string ReportCsvRow(const ReportRow& row) {
  std::ostringstream out;
  out << row.circuit_id << ',';
  if (!row.applicable) {
    out << "n/a,n/a,n/a,n/a,n/a,n/a,n/a,n/a";
    return out.str();
  }
  out << row.n_layers << ',' << row.scaling_fn << ',' << std::setprecision(6) << std::fixed
      << row.ent.mean << ',' << row.ent.std << ',' << row.expr.mean << ',' << row.expr.std << ','
      << row.ent.n_samples << ',' << row.ent.seed;
  return out.str();
}

}  // namespace skylink::qmetrics
