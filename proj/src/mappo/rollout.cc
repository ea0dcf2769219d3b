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

#include "skylink/mappo/rollout.h"

#include <cmath>

#include "skylink/common/error.h"

namespace skylink::mappo {

GaeResult Gae(std::span<const double> rewards, std::span<const double> values,
              std::span<const char> dones, double bootstrap, double gamma, double lambda) {
  const size_t n = rewards.size();
  Require(values.size() == n && dones.size() == n, "Gae: sequences must be aligned");
  GaeResult out;
  out.advantages.resize(static_cast<Eigen::Index>(n));
  out.returns.resize(static_cast<Eigen::Index>(n));
  double next_value = bootstrap;
  double next_adv = 0.0;
  for (size_t k = n; k-- > 0;) {
    const double live = dones[k] ? 0.0 : 1.0;
    const double delta = rewards[k] + gamma * next_value * live - values[k];
    next_adv = delta + gamma * lambda * live * next_adv;
    out.advantages(static_cast<Eigen::Index>(k)) = next_adv;
    out.returns(static_cast<Eigen::Index>(k)) = next_adv + values[k];
    next_value = values[k];
  }
  return out;
}

void RolloutBatch::ComputeAdvantages(double gamma, double lambda) {
  GaeResult g = Gae({rewards.data(), static_cast<size_t>(rewards.size())},
                    {values.data(), static_cast<size_t>(values.size())}, dones, bootstrap_value,
                    gamma, lambda);
  advantages = std::move(g.advantages);
  returns = std::move(g.returns);
}

void RolloutBatch::NormalizeAdvantages() {
  Require(advantages.size() == n_steps, "NormalizeAdvantages: advantages not computed");
  const double mean = advantages.mean();
  const double var = (advantages.array() - mean).square().mean();
  advantages = ((advantages.array() - mean) / (std::sqrt(var) + 1e-8)).matrix();
}

ActorMinibatch RolloutBatch::ActorSlice(std::span<const int> record_ids) const {
  const auto m = static_cast<Eigen::Index>(record_ids.size());
  ActorMinibatch mb;
  mb.obs.resize(obs.rows(), m);
  mb.actions.resize(actions.rows(), m);
  mb.old_means.resize(old_means.rows(), m);
  mb.old_log_probs.resize(m);
  mb.advantages.resize(m);
  mb.old_log_std = old_log_std;
  for (Eigen::Index j = 0; j < m; ++j) {
    const int r = record_ids[j];
    mb.obs.col(j) = obs.col(r);
    mb.actions.col(j) = actions.col(r);
    mb.old_means.col(j) = old_means.col(r);
    mb.old_log_probs(j) = old_log_probs(r);
    mb.advantages(j) = advantages(StepOf(r));
  }
  return mb;
}

CriticMinibatch RolloutBatch::CriticSlice(std::span<const int> record_ids) const {
  const auto m = static_cast<Eigen::Index>(record_ids.size());
  CriticMinibatch mb;
  mb.global_obs.resize(global_obs.rows(), m);
  mb.returns.resize(m);
  mb.old_values.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int t = StepOf(record_ids[j]);
    mb.global_obs.col(j) = global_obs.col(t);
    mb.returns(j) = returns(t);
    mb.old_values(j) = values(t);
  }
  return mb;
}

}  // namespace skylink::mappo
