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

#ifndef SKYLINK_MAPPO_TRAINER_H_
#define SKYLINK_MAPPO_TRAINER_H_

#include <cstdint>
#include <functional>
#include <memory>

#include "skylink/common/rng.h"
#include "skylink/env/world.h"
#include "skylink/mappo/config.h"
#include "skylink/mappo/critic.h"
#include "skylink/mappo/evaluate.h"
#include "skylink/mappo/rollout.h"
#include "skylink/nn/adam.h"
#include "skylink/nn/policy.h"

namespace skylink::mappo {

struct UpdateStats {
  double actor_loss = 0.0;   // mean over applied minibatches
  double critic_loss = 0.0;  // mean over applied minibatches
  double kl = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double actor_grad_norm = 0.0;
  double critic_grad_norm = 0.0;
  int minibatches = 0;
  // Minibatches skipped because a probability ratio was non-finite.
  int skipped_minibatches = 0;
  // Set when a non-finite loss or gradient rolled the update back.
  bool aborted = false;
  long circuit_evaluations = 0;
};

struct CurvePoint {
  long env_steps = 0;
  double cr_mean = 0.0;
  double cr_std = 0.0;
  double actor_loss = 0.0;
  double critic_loss = 0.0;
};

// MAPPO with a parameter-shared Gaussian actor and a centralised critic.
class Trainer {
 public:
  Trainer(env::ScenarioConfig scenario, CriticArch arch, TrainerConfig config, std::uint64_t seed);

  // Advances the environments by `steps` joint steps with sampled actions and
  // fills advantages and returns. `on_step` sees the running env step count.
  RolloutBatch Collect(int steps, const std::function<void(long)>& on_step = {});

  // Epochs of shuffled minibatch updates of actor and critic.
  UpdateStats Update(RolloutBatch& batch);

  // Deterministic mean-action episodes on this run's fixed evaluation worlds.
  EvalResult Evaluate() const;

  // Collect/Update until total_steps env steps; on_eval is called every
  // eval_interval steps. Curve losses are those of the latest update.
  void Train(long total_steps, const std::function<void(const CurvePoint&)>& on_eval);

  const nn::GaussianPolicy& policy() const { return policy_; }
  nn::GaussianPolicy& mutable_policy() { return policy_; }
  const Critic& critic() const { return *critic_; }
  Critic& mutable_critic() { return *critic_; }
  const env::ScenarioConfig& scenario() const { return scenario_; }
  const TrainerConfig& config() const { return config_; }
  long env_steps() const { return env_steps_; }
  const UpdateStats& last_update() const { return last_update_; }

 private:
  void ResetEpisode();
  Eigen::VectorXd GlobalObservation() const;

  env::ScenarioConfig scenario_;
  TrainerConfig config_;
  std::uint64_t seed_;
  nn::GaussianPolicy policy_;
  nn::Adam actor_adam_;
  std::unique_ptr<Critic> critic_;
  Rng sample_rng_;
  Rng shuffle_rng_;
  std::uint64_t eval_seed_;

  env::WorldState world_;
  std::vector<env::Observation> obs_;
  long episodes_started_ = 0;
  long env_steps_ = 0;
  UpdateStats last_update_;
  bool updated_ = false;
};

}  // namespace skylink::mappo

#endif  // SKYLINK_MAPPO_TRAINER_H_
