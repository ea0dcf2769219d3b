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

#ifndef SKYLINK_QSIM_VQC_H_
#define SKYLINK_QSIM_VQC_H_

#include <array>
#include <span>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "skylink/qsim/state.h"

namespace skylink::qsim {

inline constexpr int kVqcQubits = 4;
inline constexpr int kAnsatzParamsPerLayer = 3 * kVqcQubits;
inline constexpr int kFeaturesPerLayer = kVqcQubits;

enum class ScalingFn { kIdentity, kArctan };

std::string ScalingFnName(ScalingFn f);
ScalingFn ScalingFnFromName(const std::string& name);

double ApplyScaling(ScalingFn f, double v);
// d f(v) / dv.
double ScalingDerivative(ScalingFn f, double v);

// 4-qubit data-reuploading circuit: L repetitions of (feature map, ansatz).
struct VqcSpec {
  int n_layers = 1;
  ScalingFn scaling = ScalingFn::kIdentity;
  Eigen::VectorXd theta;  // 12 L ansatz angles
  Eigen::VectorXd xi;     // 4 L input scalings

  static VqcSpec Zero(int n_layers, ScalingFn scaling);

  int n_qubits() const { return kVqcQubits; }
  int quantum_weight_count() const { return kAnsatzParamsPerLayer * n_layers; }
  int input_scaling_count() const { return kFeaturesPerLayer * n_layers; }
  void Validate() const;
};

using Expectations = std::array<double, kVqcQubits>;

// H on every qubit, RZ(2 x_q), then for each pair i < j:
// CNOT(i -> j), RZ(2 (pi - x_i)(pi - x_j)) on j, CNOT(i -> j).
void EncodeLayer(QuantumState& state, std::span<const double> x);
// Per qubit RZ(t[3q]) RY(t[3q+1]) RZ(t[3q+2]), then CNOT ring 0->1->2->3->0.
void AnsatzLayer(QuantumState& state, std::span<const double> theta);

// Gate lists of the two layers, for export and oracle comparisons.
Circuit EncodeLayerCircuit(std::span<const double> x);
Circuit AnsatzLayerCircuit(std::span<const double> theta);

// Runs the circuit on already scaled feature angles x (4 L values).
QuantumState PrepareState(int n_layers, std::span<const double> x, std::span<const double> theta);

// x = f(o * xi) layer by layer, then <Z_q> for every qubit.
Expectations VqcForward(const VqcSpec& spec, std::span<const double> o);
// Same as VqcForward but for the scaled inputs u = o * xi.
Expectations VqcForwardScaled(const VqcSpec& spec, std::span<const double> u);

// {"n_qubits", "L", "scaling_fn", "theta", "xi"}.
nlohmann::json VqcToJson(const VqcSpec& spec);
VqcSpec VqcFromJson(const nlohmann::json& j);

}  // namespace skylink::qsim

#endif  // SKYLINK_QSIM_VQC_H_
