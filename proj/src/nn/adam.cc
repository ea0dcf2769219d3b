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

#include "skylink/nn/adam.h"

#include <cmath>

#include "skylink/common/error.h"

namespace skylink::nn {

Adam::Adam(int n_params, AdamConfig config)
    : config_(config), m_(VectorXd::Zero(n_params)), v_(VectorXd::Zero(n_params)) {}

void Adam::Step(VectorXd& params, const VectorXd& grad) {
  Require(params.size() == m_.size() && grad.size() == m_.size(), "Adam::Step: shape mismatch");
  if (!grad.allFinite()) throw TrainingError("Adam::Step: non-finite gradient");
  ++step_;
  m_ = config_.beta1 * m_ + (1.0 - config_.beta1) * grad;
  v_ = config_.beta2 * v_ + (1.0 - config_.beta2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));
  params.array() -= config_.learning_rate * (m_.array() / c1) /
                    ((v_.array() / c2).sqrt() + config_.epsilon);
}

}  // namespace skylink::nn
