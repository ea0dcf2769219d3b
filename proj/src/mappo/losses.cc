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

#include "skylink/mappo/losses.h"

#include <algorithm>
#include <cmath>

#include "skylink/common/error.h"

namespace skylink::mappo {

ActorLossTerms ActorLoss(const nn::GaussianPolicy& policy, const ActorMinibatch& mb,
                         const TrainerConfig& cfg, Eigen::VectorXd* grad) {
  const auto m = mb.obs.cols();
  Require(m > 0, "ActorLoss: empty minibatch");
  Require(mb.actions.cols() == m && mb.old_means.cols() == m && mb.old_log_probs.size() == m &&
              mb.advantages.size() == m,
          "ActorLoss: minibatch columns disagree");
  const VectorXd& log_std = policy.log_std();
  nn::Tape tape;
  const MatrixXd means = policy.mean_net().Forward(mb.obs, &tape);

  ActorLossTerms out;
  out.entropy = policy.Entropy();
  MatrixXd d_means = MatrixXd::Zero(means.rows(), m);
  VectorXd d_log_std = VectorXd::Zero(log_std.size());
  const double inv_m = 1.0 / static_cast<double>(m);
  double surrogate = 0.0, kl = 0.0;
  int clipped = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const VectorXd mean = means.col(j);
    const VectorXd action = mb.actions.col(j);
    const double log_prob = nn::GaussianLogProb(action, mean, log_std);
    const double ratio = std::exp(log_prob - mb.old_log_probs(j));
    if (!std::isfinite(ratio)) {
      out.finite = false;
      return out;
    }
    const double adv = mb.advantages(j);
    const double clipped_ratio = std::clamp(ratio, 1.0 - cfg.clip, 1.0 + cfg.clip);
    const double unclipped_term = ratio * adv;
    const double clipped_term = clipped_ratio * adv;
    surrogate += std::min(unclipped_term, clipped_term);
    if (clipped_ratio != ratio) ++clipped;

    VectorXd kl_d_mean, kl_d_log_std;
    kl += nn::GaussianKl(mb.old_means.col(j), mb.old_log_std, mean, log_std,
                         grad ? &kl_d_mean : nullptr, grad ? &kl_d_log_std : nullptr);
    if (!grad) continue;

    // The min picks the clipped branch only when it is strictly smaller, and
    // that branch is flat in the ratio outside the clip band.
    const bool flat = clipped_term < unclipped_term && clipped_ratio != ratio;
    const double d_log_prob = flat ? 0.0 : -adv * ratio * inv_m;
    VectorXd lp_d_mean, lp_d_log_std;
    nn::GaussianLogProbGrad(action, mean, log_std, &lp_d_mean, &lp_d_log_std);
    d_means.col(j) = d_log_prob * lp_d_mean + cfg.kl_coef * inv_m * kl_d_mean;
    d_log_std += d_log_prob * lp_d_log_std + cfg.kl_coef * inv_m * kl_d_log_std;
  }
  out.surrogate = surrogate * inv_m;
  out.kl = kl * inv_m;
  out.clip_fraction = clipped * inv_m;
  out.loss = -out.surrogate - cfg.entropy_coef * out.entropy + cfg.kl_coef * out.kl;

  if (grad) {
    // dS/dlog_std = 1 per dimension.
    d_log_std.array() -= cfg.entropy_coef;
    const int n_net = policy.mean_net().parameter_count();
    grad->setZero(policy.parameter_count());
    policy.mean_net().Backward(tape, d_means, grad->head(n_net));
    grad->tail(log_std.size()) = d_log_std;
  }
  return out;
}

double CriticLoss(const VectorXd& values, const CriticMinibatch& mb, double clip,
                  VectorXd* dvalues) {
  const auto m = values.size();
  Require(m > 0 && mb.returns.size() == m && mb.old_values.size() == m,
          "CriticLoss: size mismatch");
  if (dvalues) dvalues->setZero(m);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double v = values(j);
    const double lo = mb.old_values(j) - clip, hi = mb.old_values(j) + clip;
    const double vc = std::clamp(v, lo, hi);
    const double unclipped = (v - mb.returns(j)) * (v - mb.returns(j));
    const double clipped = (vc - mb.returns(j)) * (vc - mb.returns(j));
    loss += std::max(unclipped, clipped);
    if (!dvalues) continue;
    if (unclipped >= clipped) {
      (*dvalues)(j) = 2.0 * (v - mb.returns(j)) / m;
    } else if (v > lo && v < hi) {
      (*dvalues)(j) = 2.0 * (vc - mb.returns(j)) / m;
    }
  }
  return loss / m;
}

}  // namespace skylink::mappo
