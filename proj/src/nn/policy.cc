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

#include "skylink/nn/policy.h"

#include <cmath>
#include <numbers>

#include "skylink/common/error.h"

namespace skylink::nn {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)
}

GaussianPolicy::GaussianPolicy(DenseNet mean_net, VectorXd log_std)
    : mean_net_(std::move(mean_net)), log_std_(std::move(log_std)) {
  Require(log_std_.size() == mean_net_.output_dim(), "GaussianPolicy: log_std size mismatch");
}

GaussianPolicy GaussianPolicy::Create(int obs_dim, int action_dim, const std::vector<int>& hidden,
                                      Rng& rng, double init_log_std, double output_bias) {
  std::vector<int> dims = {obs_dim};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(action_dim);
  DenseNet net = DenseNet::Random(dims, Activation::kTanh, Activation::kIdentity, rng, 0.01);
  net.mutable_layers().back().bias.setConstant(output_bias);
  return GaussianPolicy(std::move(net), VectorXd::Constant(action_dim, init_log_std));
}

GaussianPolicy::Sample GaussianPolicy::Draw(const VectorXd& obs, Rng& rng) const {
  Sample s;
  s.mean = Mean(obs);
  s.action.resize(s.mean.size());
  for (Eigen::Index d = 0; d < s.mean.size(); ++d) {
    s.action(d) = s.mean(d) + std::exp(log_std_(d)) * StandardNormal(rng);
  }
  s.log_prob = GaussianLogProb(s.action, s.mean, log_std_);
  return s;
}

double GaussianPolicy::Entropy() const {
  return (log_std_.array() + 0.5 * (kLog2Pi + 1.0)).sum();
}

VectorXd GaussianPolicy::Parameters() const {
  VectorXd flat(parameter_count());
  flat << mean_net_.Parameters(), log_std_;
  return flat;
}

void GaussianPolicy::SetParameters(const VectorXd& flat) {
  Require(flat.size() == parameter_count(), "GaussianPolicy::SetParameters: size mismatch");
  const int n = mean_net_.parameter_count();
  mean_net_.SetParameters(flat.head(n));
  log_std_ = flat.tail(log_std_.size());
}

double GaussianLogProb(const VectorXd& action, const VectorXd& mean, const VectorXd& log_std) {
  double lp = 0.0;
  for (Eigen::Index d = 0; d < mean.size(); ++d) {
    const double z = (action(d) - mean(d)) * std::exp(-log_std(d));
    lp += -0.5 * z * z - log_std(d) - 0.5 * kLog2Pi;
  }
  return lp;
}

void GaussianLogProbGrad(const VectorXd& action, const VectorXd& mean, const VectorXd& log_std,
                         VectorXd* d_mean, VectorXd* d_log_std) {
  const Eigen::ArrayXd inv_var = (-2.0 * log_std.array()).exp();
  const Eigen::ArrayXd diff = (action - mean).array();
  if (d_mean) *d_mean = (diff * inv_var).matrix();
  if (d_log_std) *d_log_std = (diff.square() * inv_var - 1.0).matrix();
}

double GaussianKl(const VectorXd& old_mean, const VectorXd& old_log_std, const VectorXd& new_mean,
                  const VectorXd& new_log_std, VectorXd* d_new_mean, VectorXd* d_new_log_std) {
  const Eigen::ArrayXd old_var = (2.0 * old_log_std.array()).exp();
  const Eigen::ArrayXd inv_new_var = (-2.0 * new_log_std.array()).exp();
  const Eigen::ArrayXd diff = (new_mean - old_mean).array();
  const Eigen::ArrayXd ratio = (old_var + diff.square()) * inv_new_var;
  if (d_new_mean) *d_new_mean = (diff * inv_new_var).matrix();
  if (d_new_log_std) *d_new_log_std = (1.0 - ratio).matrix();
  return (new_log_std.array() - old_log_std.array() + 0.5 * ratio - 0.5).sum();
}

}  // namespace skylink::nn
