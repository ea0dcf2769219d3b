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

#ifndef SKYLINK_QSIM_SPSA_H_
#define SKYLINK_QSIM_SPSA_H_

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "skylink/common/rng.h"

namespace skylink::qsim {

// Gains a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
struct SpsaConfig {
  double a = 0.0;
  double c = 0.1;
  double stability = 50.0;  // A
  double alpha = 0.602;
  double gamma = 0.101;

  // Picks `a` so that the first step size a_0 equals `first_step`.
  static SpsaConfig WithFirstStep(double first_step);
};

class Spsa {
 public:
  Spsa(SpsaConfig config, std::uint64_t seed);

  const SpsaConfig& config() const { return config_; }
  long iteration() const { return k_; }
  double StepSize() const { return StepSize(k_); }
  double Perturbation() const { return Perturbation(k_); }
  double StepSize(long k) const;
  double Perturbation(long k) const;

  // Rademacher +-1 direction from the optimiser's own stream.
  Eigen::VectorXd DrawDirection(int n);

  struct Estimate {
    Eigen::VectorXd grad;
    Eigen::VectorXd delta;
    double c_k = 0.0;
    double loss_plus = 0.0;
    double loss_minus = 0.0;
    double loss_center = 0.0;
    int evaluations = 0;
  };
  using LossFn = std::function<double(const Eigen::VectorXd&)>;

  // Evaluates the loss at theta + c_k delta, theta - c_k delta and theta, in
  // that order. grad_i = (loss_plus - loss_minus) / (2 c_k delta_i).
  // Throws TrainingError on a non-finite loss.
  Estimate Gradient(const LossFn& loss, const Eigen::VectorXd& theta);

  // theta <- theta - a_k grad, then k <- k + 1.
  void Apply(Eigen::VectorXd& theta, const Eigen::VectorXd& grad);
  // Gradient followed by Apply; returns the loss at the pre-update centre.
  double Step(const LossFn& loss, Eigen::VectorXd& theta);

 private:
  SpsaConfig config_;
  Rng rng_;
  long k_ = 0;
};

}  // namespace skylink::qsim

#endif  // SKYLINK_QSIM_SPSA_H_
