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

#ifndef SKYLINK_NN_ADAM_H_
#define SKYLINK_NN_ADAM_H_

#include "skylink/nn/dense.h"

namespace skylink::nn {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam over a flat parameter vector.
class Adam {
 public:
  Adam() = default;
  Adam(int n_params, AdamConfig config);

  // Throws TrainingError (and leaves everything untouched) if `grad` has a
  // non-finite entry.
  void Step(VectorXd& params, const VectorXd& grad);

  const AdamConfig& config() const { return config_; }
  long steps() const { return step_; }
  const VectorXd& first_moment() const { return m_; }
  const VectorXd& second_moment() const { return v_; }

 private:
  AdamConfig config_;
  VectorXd m_;
  VectorXd v_;
  long step_ = 0;
};

}  // namespace skylink::nn

#endif  // SKYLINK_NN_ADAM_H_
