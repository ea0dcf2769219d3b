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

#ifndef SKYLINK_NN_POLICY_H_
#define SKYLINK_NN_POLICY_H_

#include <vector>

#include "skylink/common/rng.h"
#include "skylink/nn/dense.h"

namespace skylink::nn {

// Diagonal Gaussian over actions with a state-dependent mean and a
// state-independent trainable log standard deviation. Flat parameters are the
// mean network's followed by log_std.
class GaussianPolicy {
 public:
  GaussianPolicy() = default;
  GaussianPolicy(DenseNet mean_net, VectorXd log_std);

  // tanh hidden layers, identity output. Output weights are scaled by 0.01
  // and output biases set to `output_bias` so initial means sit near it.
  static GaussianPolicy Create(int obs_dim, int action_dim, const std::vector<int>& hidden,
                               Rng& rng, double init_log_std, double output_bias);

  const DenseNet& mean_net() const { return mean_net_; }
  const VectorXd& log_std() const { return log_std_; }
  int obs_dim() const { return mean_net_.input_dim(); }
  int action_dim() const { return mean_net_.output_dim(); }
  int parameter_count() const { return mean_net_.parameter_count() + static_cast<int>(log_std_.size()); }

  VectorXd Mean(const VectorXd& obs) const { return mean_net_.Forward(obs); }

  struct Sample {
    VectorXd action;
    VectorXd mean;
    double log_prob = 0.0;
  };
  Sample Draw(const VectorXd& obs, Rng& rng) const;

  // Closed form: sum(log_std + 0.5 log(2 pi e)).
  double Entropy() const;

  VectorXd Parameters() const;
  void SetParameters(const VectorXd& flat);

 private:
  DenseNet mean_net_;
  VectorXd log_std_;
};

// log N(action; mean, exp(log_std)^2), summed over dimensions.
double GaussianLogProb(const VectorXd& action, const VectorXd& mean, const VectorXd& log_std);

// Partial derivatives of GaussianLogProb.
void GaussianLogProbGrad(const VectorXd& action, const VectorXd& mean, const VectorXd& log_std,
                         VectorXd* d_mean, VectorXd* d_log_std);

// KL(old || new) between diagonal Gaussians, with derivatives w.r.t. the new
// distribution's mean and log_std when the outputs are non-null.
double GaussianKl(const VectorXd& old_mean, const VectorXd& old_log_std, const VectorXd& new_mean,
                  const VectorXd& new_log_std, VectorXd* d_new_mean = nullptr,
                  VectorXd* d_new_log_std = nullptr);

}  // namespace skylink::nn

#endif  // SKYLINK_NN_POLICY_H_
