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

#ifndef SKYLINK_QSIM_STATE_H_
#define SKYLINK_QSIM_STATE_H_

#include <complex>
#include <vector>

namespace skylink::qsim {

using Complex = std::complex<double>;

enum class GateKind { kH, kRx, kRy, kRz, kCnot, kCphase };

// Single-qubit gates use `target` only. For CNOT and CPHASE, `control` is the
// control qubit.
struct Gate {
  GateKind kind = GateKind::kH;
  int target = 0;
  int control = -1;
  double angle = 0.0;

  static Gate H(int q) { return {GateKind::kH, q, -1, 0.0}; }
  static Gate Rx(int q, double a) { return {GateKind::kRx, q, -1, a}; }
  static Gate Ry(int q, double a) { return {GateKind::kRy, q, -1, a}; }
  static Gate Rz(int q, double a) { return {GateKind::kRz, q, -1, a}; }
  static Gate Cnot(int c, int t) { return {GateKind::kCnot, t, c, 0.0}; }
  static Gate Cphase(int c, int t, double a) { return {GateKind::kCphase, t, c, a}; }
};

using Circuit = std::vector<Gate>;

// Statevector over n qubits. Qubit q is bit q of the basis index.
// Rotations follow R_P(a) = exp(-i a P / 2); CPHASE(a) multiplies |11> by e^{ia}.
class QuantumState {
 public:
  // |0...0>.
  explicit QuantumState(int n_qubits = 4);

  int n_qubits() const { return n_qubits_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  std::vector<Complex>& mutable_amplitudes() { return amplitudes_; }

  void Apply(const Gate& gate);
  void Apply(const Circuit& circuit);

  double Norm() const;
  // <Z_q> = P(bit q = 0) - P(bit q = 1).
  double ExpectZ(int q) const;
  // |<this|other>|^2.
  double Fidelity(const QuantumState& other) const;

 private:
  void ApplySingle(int q, Complex m00, Complex m01, Complex m10, Complex m11);
  void ApplyDiagonal(int q, Complex d0, Complex d1);

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

}  // namespace skylink::qsim

#endif  // SKYLINK_QSIM_STATE_H_
