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

#include "skylink/mappo/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "skylink/common/error.h"
#include "skylink/mappo/losses.h"

namespace skylink::mappo {

namespace {

enum Stream : std::uint64_t { kActorInit = 1, kCriticInit, kSpsa, kSampling, kShuffle, kWorlds, kEval };

}  // namespace

Trainer::Trainer(env::ScenarioConfig scenario, CriticArch arch, TrainerConfig config,
                 std::uint64_t seed)
    : scenario_(std::move(scenario)),
      config_(std::move(config)),
      seed_(seed),
      sample_rng_(DeriveSeed(seed, kSampling)),
      shuffle_rng_(DeriveSeed(seed, kShuffle)),
      eval_seed_(DeriveSeed(seed, kEval)) {
  scenario_.Validate();
  config_.Validate();
  Rng actor_rng(DeriveSeed(seed, kActorInit));
  policy_ = nn::GaussianPolicy::Create(scenario_.obs_dim(), scenario_.action_dim(),
                                       config_.actor_hidden, actor_rng,
                                       config_.actor_init_log_std, config_.actor_output_bias);
  nn::AdamConfig adam;
  adam.learning_rate = config_.learning_rate;
  actor_adam_ = nn::Adam(policy_.parameter_count(), adam);
  Rng critic_rng(DeriveSeed(seed, kCriticInit));
  critic_ = MakeCritic(arch, scenario_.global_obs_dim(), config_.learning_rate,
                       config_.spsa_first_step, critic_rng, DeriveSeed(seed, kSpsa));
  ResetEpisode();
}

void Trainer::ResetEpisode() {
  world_ = env::InitWorld(scenario_, DeriveSeed(DeriveSeed(seed_, kWorlds),
                                                static_cast<std::uint64_t>(episodes_started_++)));
  obs_ = env::ObserveAll(world_, scenario_);
}

Eigen::VectorXd Trainer::GlobalObservation() const {
  Eigen::VectorXd o(scenario_.global_obs_dim());
  Eigen::Index k = 0;
  for (const env::Observation& local : obs_)
    for (double v : local) o(k++) = v;
  return o;
}

RolloutBatch Trainer::Collect(int steps, const std::function<void(long)>& on_step) {
  Require(steps >= 1, "Collect: steps must be positive");
  const int n_agents = scenario_.n_aircraft;
  RolloutBatch batch;
  batch.n_agents = n_agents;
  batch.n_steps = steps;
  batch.obs.resize(scenario_.obs_dim(), steps * n_agents);
  batch.actions.resize(scenario_.action_dim(), steps * n_agents);
  batch.old_means.resize(scenario_.action_dim(), steps * n_agents);
  batch.old_log_probs.resize(steps * n_agents);
  batch.old_log_std = policy_.log_std();
  batch.global_obs.resize(scenario_.global_obs_dim(), steps);
  batch.rewards.resize(steps);
  batch.values.resize(steps);
  batch.dones.assign(steps, 0);

  std::vector<env::ActionVector> joint(n_agents);
  for (int t = 0; t < steps; ++t) {
    const Eigen::VectorXd global = GlobalObservation();
    batch.global_obs.col(t) = global;
    batch.values(t) = critic_->Value(global);
    for (int a = 0; a < n_agents; ++a) {
      const int r = t * n_agents + a;
      const Eigen::VectorXd local =
          Eigen::Map<const Eigen::VectorXd>(obs_[a].data(), static_cast<Eigen::Index>(obs_[a].size()));
      const nn::GaussianPolicy::Sample s = policy_.Draw(local, sample_rng_);
      batch.obs.col(r) = local;
      batch.actions.col(r) = s.action;
      batch.old_means.col(r) = s.mean;
      batch.old_log_probs(r) = s.log_prob;
      joint[a].assign(s.action.data(), s.action.data() + s.action.size());
    }
    env::StepResult step = env::EnvStep(world_, joint, scenario_);
    batch.rewards(t) = step.reward;
    batch.dones[t] = step.done ? 1 : 0;
    world_ = std::move(step.world);
    obs_ = std::move(step.observations);
    if (step.done) ResetEpisode();
    ++env_steps_;
    if (on_step) on_step(env_steps_);
  }
  batch.bootstrap_value = batch.dones.back() ? 0.0 : critic_->Value(GlobalObservation());
  batch.ComputeAdvantages(config_.gamma, config_.gae_lambda);
  return batch;
}

UpdateStats Trainer::Update(RolloutBatch& batch) {
  batch.NormalizeAdvantages();
  const nn::GaussianPolicy policy_backup = policy_;
  const nn::Adam adam_backup = actor_adam_;
  const std::unique_ptr<Critic> critic_backup = critic_->Clone();

  UpdateStats stats;
  const long circuits_before = critic_->circuit_evaluations();
  std::vector<int> ids(batch.records());
  std::iota(ids.begin(), ids.end(), 0);
  try {
    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
      std::shuffle(ids.begin(), ids.end(), shuffle_rng_);
      for (size_t start = 0; start < ids.size(); start += config_.minibatch) {
        const size_t len = std::min<size_t>(config_.minibatch, ids.size() - start);
        const std::span<const int> chunk(ids.data() + start, len);

        Eigen::VectorXd grad;
        const ActorLossTerms terms = ActorLoss(policy_, batch.ActorSlice(chunk), config_, &grad);
        if (!terms.finite) {
          ++stats.skipped_minibatches;
          continue;
        }
        if (!std::isfinite(terms.loss)) throw TrainingError("actor loss is not finite");
        Eigen::VectorXd params = policy_.Parameters();
        actor_adam_.Step(params, grad);
        policy_.SetParameters(params);

        const CriticStepStats critic = critic_->Step(batch.CriticSlice(chunk), config_.clip);

        ++stats.minibatches;
        stats.actor_loss += terms.loss;
        stats.critic_loss += critic.loss;
        stats.kl += terms.kl;
        stats.entropy += terms.entropy;
        stats.clip_fraction += terms.clip_fraction;
        stats.actor_grad_norm += grad.norm();
        stats.critic_grad_norm += critic.grad_norm;
      }
    }
  } catch (const TrainingError&) {
    policy_ = policy_backup;
    actor_adam_ = adam_backup;
    critic_ = critic_backup->Clone();
    UpdateStats aborted;
    aborted.aborted = true;
    last_update_ = aborted;
    return aborted;
  }
  if (stats.minibatches > 0) {
    const double n = stats.minibatches;
    stats.actor_loss /= n;
    stats.critic_loss /= n;
    stats.kl /= n;
    stats.entropy /= n;
    stats.clip_fraction /= n;
    stats.actor_grad_norm /= n;
    stats.critic_grad_norm /= n;
  }
  stats.circuit_evaluations = critic_->circuit_evaluations() - circuits_before;
  last_update_ = stats;
  updated_ = true;
  return stats;
}

EvalResult Trainer::Evaluate() const {
  MeanActionPolicy actor(policy_);
  return mappo::Evaluate(actor, scenario_, config_.eval_episodes, eval_seed_);
}

void Trainer::Train(long total_steps, const std::function<void(const CurvePoint&)>& on_eval) {
  const auto emit = [&](long steps) {
    if (steps % config_.eval_interval != 0 || !on_eval) return;
    const EvalResult eval = Evaluate();
    CurvePoint p;
    p.env_steps = steps;
    p.cr_mean = eval.cr_mean;
    p.cr_std = eval.cr_std;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    p.actor_loss = updated_ ? last_update_.actor_loss : nan;
    p.critic_loss = updated_ ? last_update_.critic_loss : nan;
    on_eval(p);
  };
  int aborts = 0;
  while (env_steps_ < total_steps) {
    const int steps = static_cast<int>(std::min<long>(config_.rollout_steps, total_steps - env_steps_));
    RolloutBatch batch = Collect(steps, emit);
    aborts = Update(batch).aborted ? aborts + 1 : 0;
    if (aborts >= config_.max_consecutive_aborts) {
      throw TrainingError("training aborted after " + std::to_string(aborts) +
                          " non-finite updates at env step " + std::to_string(env_steps_));
    }
  }
}

}  // namespace skylink::mappo
