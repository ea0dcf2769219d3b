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

#include "skylink/qsim/spsa.h"

#include <cmath>

#include "skylink/common/error.h"

namespace skylink::qsim {

SpsaConfig SpsaConfig::WithFirstStep(double first_step) {
  SpsaConfig cfg;
  cfg.a = first_step * std::pow(1.0 + cfg.stability, cfg.alpha);
  return cfg;
}

Spsa::Spsa(SpsaConfig config, std::uint64_t seed) : config_(config), rng_(MixSeed(seed)) {
  Require(config_.a > 0.0 && config_.c > 0.0, "Spsa: gains must be positive");
  Require(config_.stability >= 0.0 && config_.alpha > 0.0 && config_.gamma > 0.0,
          "Spsa: invalid gain exponents");
}

double Spsa::StepSize(long k) const {
  return config_.a / std::pow(static_cast<double>(k) + 1.0 + config_.stability, config_.alpha);
}

double Spsa::Perturbation(long k) const {
  return config_.c / std::pow(static_cast<double>(k) + 1.0, config_.gamma);
}

Eigen::VectorXd Spsa::DrawDirection(int n) {
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = (rng_() >> 63) ? 1.0 : -1.0;
  return d;
}

Spsa::Estimate Spsa::Gradient(const LossFn& loss, const Eigen::VectorXd& theta) {
  Estimate e;
  e.c_k = Perturbation();
  e.delta = DrawDirection(static_cast<int>(theta.size()));
  e.loss_plus = loss(theta + e.c_k * e.delta);
  e.loss_minus = loss(theta - e.c_k * e.delta);
  e.loss_center = loss(theta);
  e.evaluations = 3;
  if (!std::isfinite(e.loss_plus) || !std::isfinite(e.loss_minus) ||
      !std::isfinite(e.loss_center)) {
    throw TrainingError("SPSA: non-finite loss");
  }
  e.grad = ((e.loss_plus - e.loss_minus) / (2.0 * e.c_k)) * e.delta.cwiseInverse();
  return e;
}

void Spsa::Apply(Eigen::VectorXd& theta, const Eigen::VectorXd& grad) {
  Require(theta.size() == grad.size(), "Spsa::Apply: size mismatch");
  theta -= StepSize() * grad;
  ++k_;
}

double Spsa::Step(const LossFn& loss, Eigen::VectorXd& theta) {
  const Estimate e = Gradient(loss, theta);
  Apply(theta, e.grad);
  return e.loss_center;
}

}  // namespace skylink::qsim
