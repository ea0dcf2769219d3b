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

#include "skylink/qsim/vqc.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "skylink/common/error.h"

namespace skylink::qsim {

std::string ScalingFnName(ScalingFn f) { return f == ScalingFn::kArctan ? "arctan" : "identity"; }

ScalingFn ScalingFnFromName(const std::string& name) {
  if (name == "identity") return ScalingFn::kIdentity;
  if (name == "arctan") return ScalingFn::kArctan;
  throw ConfigError("unknown scaling function: " + name);
}

double ApplyScaling(ScalingFn f, double v) { return f == ScalingFn::kArctan ? std::atan(v) : v; }

double ScalingDerivative(ScalingFn f, double v) {
  return f == ScalingFn::kArctan ? 1.0 / (1.0 + v * v) : 1.0;
}

VqcSpec VqcSpec::Zero(int n_layers, ScalingFn scaling) {
  VqcSpec spec;
  spec.n_layers = n_layers;
  spec.scaling = scaling;
  spec.theta = Eigen::VectorXd::Zero(kAnsatzParamsPerLayer * n_layers);
  spec.xi = Eigen::VectorXd::Ones(kFeaturesPerLayer * n_layers);
  spec.Validate();
  return spec;
}

void VqcSpec::Validate() const {
  Require(n_layers >= 1, "VqcSpec: n_layers must be >= 1");
  Require(theta.size() == quantum_weight_count(), "VqcSpec: theta must have 12 L entries");
  Require(xi.size() == input_scaling_count(), "VqcSpec: xi must have 4 L entries");
}

Circuit EncodeLayerCircuit(std::span<const double> x) {
  Require(x.size() == kFeaturesPerLayer, "EncodeLayer: expected 4 features");
  Circuit c;
  for (int q = 0; q < kVqcQubits; ++q) c.push_back(Gate::H(q));
  for (int q = 0; q < kVqcQubits; ++q) c.push_back(Gate::Rz(q, 2.0 * x[q]));
  for (int i = 0; i < kVqcQubits; ++i) {
    for (int j = i + 1; j < kVqcQubits; ++j) {
      const double xx = 2.0 * (std::numbers::pi - x[i]) * (std::numbers::pi - x[j]);
      c.push_back(Gate::Cnot(i, j));
      c.push_back(Gate::Rz(j, xx));
      c.push_back(Gate::Cnot(i, j));
    }
  }
  return c;
}

Circuit AnsatzLayerCircuit(std::span<const double> theta) {
  Require(theta.size() == kAnsatzParamsPerLayer, "AnsatzLayer: expected 12 angles");
  Circuit c;
  for (int q = 0; q < kVqcQubits; ++q) {
    c.push_back(Gate::Rz(q, theta[3 * q]));
    c.push_back(Gate::Ry(q, theta[3 * q + 1]));
    c.push_back(Gate::Rz(q, theta[3 * q + 2]));
  }
  for (int q = 0; q < kVqcQubits; ++q) c.push_back(Gate::Cnot(q, (q + 1) % kVqcQubits));
  return c;
}

void EncodeLayer(QuantumState& state, std::span<const double> x) {
  state.Apply(EncodeLayerCircuit(x));
}

void AnsatzLayer(QuantumState& state, std::span<const double> theta) {
  state.Apply(AnsatzLayerCircuit(theta));
}

QuantumState PrepareState(int n_layers, std::span<const double> x, std::span<const double> theta) {
  Require(x.size() == static_cast<size_t>(kFeaturesPerLayer * n_layers),
          "PrepareState: feature length must be 4 L");
  Require(theta.size() == static_cast<size_t>(kAnsatzParamsPerLayer * n_layers),
          "PrepareState: theta length must be 12 L");
  QuantumState state(kVqcQubits);
  for (int l = 0; l < n_layers; ++l) {
    EncodeLayer(state, x.subspan(kFeaturesPerLayer * l, kFeaturesPerLayer));
    AnsatzLayer(state, theta.subspan(kAnsatzParamsPerLayer * l, kAnsatzParamsPerLayer));
  }
  return state;
}

Expectations VqcForwardScaled(const VqcSpec& spec, std::span<const double> u) {
  spec.Validate();
  Require(u.size() == static_cast<size_t>(spec.input_scaling_count()),
          "VqcForward: input length must be 4 L");
  std::vector<double> x(u.size());
  for (size_t k = 0; k < u.size(); ++k) x[k] = ApplyScaling(spec.scaling, u[k]);
  const QuantumState state =
      PrepareState(spec.n_layers, x, {spec.theta.data(), static_cast<size_t>(spec.theta.size())});
  Expectations z;
  for (int q = 0; q < kVqcQubits; ++q) z[q] = state.ExpectZ(q);
  return z;
}

Expectations VqcForward(const VqcSpec& spec, std::span<const double> o) {
  spec.Validate();
  Require(o.size() == static_cast<size_t>(spec.input_scaling_count()),
          "VqcForward: input length must be 4 L");
  std::vector<double> u(o.size());
  for (size_t k = 0; k < o.size(); ++k) u[k] = o[k] * spec.xi(static_cast<Eigen::Index>(k));
  return VqcForwardScaled(spec, u);
}

nlohmann::json VqcToJson(const VqcSpec& spec) {
  return {{"n_qubits", kVqcQubits},
          {"L", spec.n_layers},
          {"scaling_fn", ScalingFnName(spec.scaling)},
          {"theta", std::vector<double>(spec.theta.data(), spec.theta.data() + spec.theta.size())},
          {"xi", std::vector<double>(spec.xi.data(), spec.xi.data() + spec.xi.size())}};
}

VqcSpec VqcFromJson(const nlohmann::json& j) {
  if (j.at("n_qubits").get<int>() != kVqcQubits) throw ConfigError("VQC: only 4 qubits supported");
  VqcSpec spec;
  spec.n_layers = j.at("L").get<int>();
  spec.scaling = ScalingFnFromName(j.at("scaling_fn").get<std::string>());
  const auto theta = j.at("theta").get<std::vector<double>>();
  const auto xi = j.at("xi").get<std::vector<double>>();
  spec.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
  spec.xi = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(xi.size()));
  if (spec.n_layers < 1 || spec.theta.size() != spec.quantum_weight_count() ||
      spec.xi.size() != spec.input_scaling_count()) {
    throw ConfigError("VQC: parameter lengths do not match L");
  }
  return spec;
}

}  // namespace skylink::qsim
