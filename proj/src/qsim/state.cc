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

#include "skylink/qsim/state.h"

#include <cmath>
#include <numbers>

#include "skylink/common/error.h"

namespace skylink::qsim {

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
  Require(n_qubits >= 1 && n_qubits <= 20, "QuantumState: unsupported qubit count");
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex(0.0, 0.0));
  amplitudes_[0] = 1.0;
}

void QuantumState::ApplySingle(int q, Complex m00, Complex m01, Complex m10, Complex m11) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amplitudes_[i];
    const Complex a1 = amplitudes_[i | mask];
    amplitudes_[i] = m00 * a0 + m01 * a1;
    amplitudes_[i | mask] = m10 * a0 + m11 * a1;
  }
}

void QuantumState::ApplyDiagonal(int q, Complex d0, Complex d1) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] *= (i & mask) ? d1 : d0;
}

void QuantumState::Apply(const Gate& gate) {
  Require(gate.target >= 0 && gate.target < n_qubits_, "QuantumState: target qubit out of range");
  const bool two_qubit = gate.kind == GateKind::kCnot || gate.kind == GateKind::kCphase;
  if (two_qubit) {
    Require(gate.control >= 0 && gate.control < n_qubits_,
            "QuantumState: control qubit out of range");
    Require(gate.control != gate.target, "QuantumState: control and target coincide");
  }
  const double half = 0.5 * gate.angle;
  const double c = std::cos(half), s = std::sin(half);
  const Complex i(0.0, 1.0);
  switch (gate.kind) {
    case GateKind::kH: {
      const double r = std::numbers::sqrt2 / 2.0;
      ApplySingle(gate.target, r, r, r, -r);
      break;
    }
    case GateKind::kRx:
      ApplySingle(gate.target, c, -i * s, -i * s, c);
      break;
    case GateKind::kRy:
      ApplySingle(gate.target, c, -s, s, c);
      break;
    case GateKind::kRz:
      ApplyDiagonal(gate.target, Complex(c, -s), Complex(c, s));
      break;
    case GateKind::kCnot: {
      const std::size_t cm = std::size_t{1} << gate.control;
      const std::size_t tm = std::size_t{1} << gate.target;
      for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        if ((k & cm) && !(k & tm)) std::swap(amplitudes_[k], amplitudes_[k | tm]);
      }
      break;
    }
    case GateKind::kCphase: {
      const std::size_t both = (std::size_t{1} << gate.control) | (std::size_t{1} << gate.target);
      const Complex phase = std::polar(1.0, gate.angle);
      for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        if ((k & both) == both) amplitudes_[k] *= phase;
      }
      break;
    }
  }
}

void QuantumState::Apply(const Circuit& circuit) {
  for (const Gate& g : circuit) Apply(g);
}

double QuantumState::Norm() const {
  double n = 0.0;
  for (const Complex& a : amplitudes_) n += std::norm(a);
  return std::sqrt(n);
}

double QuantumState::ExpectZ(int q) const {
  Require(q >= 0 && q < n_qubits_, "ExpectZ: qubit out of range");
  const std::size_t mask = std::size_t{1} << q;
  double z = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    z += (i & mask) ? -std::norm(amplitudes_[i]) : std::norm(amplitudes_[i]);
  }
  return z;
}

double QuantumState::Fidelity(const QuantumState& other) const {
  Require(other.dim() == dim(), "Fidelity: dimension mismatch");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    const Complex& a = amplitudes_[i];
    const Complex& b = other.amplitudes_[i];
    re += a.real() * b.real() + a.imag() * b.imag();
    im += a.real() * b.imag() - a.imag() * b.real();
  }
  return re * re + im * im;
}

}  // namespace skylink::qsim
