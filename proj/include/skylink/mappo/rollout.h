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

#ifndef SKYLINK_MAPPO_ROLLOUT_H_
#define SKYLINK_MAPPO_ROLLOUT_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace skylink::mappo {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct GaeResult {
  VectorXd advantages;
  VectorXd returns;
};

// delta_t = r_t + gamma V_{t+1} (1 - done_t) - V_t and
// A_t = delta_t + gamma lambda (1 - done_t) A_{t+1}; returns are A + V.
// `bootstrap` is V after the last step and is ignored if that step is done.
GaeResult Gae(std::span<const double> rewards, std::span<const double> values,
              std::span<const char> dones, double bootstrap, double gamma, double lambda);

// Inputs of the actor objective for a set of agent-step records; column j
// is record j.
struct ActorMinibatch {
  MatrixXd obs;
  MatrixXd actions;
  MatrixXd old_means;
  VectorXd old_log_std;
  VectorXd old_log_probs;
  VectorXd advantages;
};

// Inputs of the critic objective; column j of global_obs belongs to record j.
struct CriticMinibatch {
  MatrixXd global_obs;
  VectorXd returns;
  VectorXd old_values;
};

// One rollout. Agent-step records are stored step-major: record
// t * n_agents + i is agent i at step t. Step quantities are shared by all
// agents of that step.
struct RolloutBatch {
  int n_agents = 0;
  int n_steps = 0;

  MatrixXd obs;            // obs_dim x records
  MatrixXd actions;        // action_dim x records
  MatrixXd old_means;      // action_dim x records
  VectorXd old_log_std;    // action_dim
  VectorXd old_log_probs;  // records

  MatrixXd global_obs;  // global_obs_dim x steps
  VectorXd rewards;     // steps
  VectorXd values;      // steps
  std::vector<char> dones;
  double bootstrap_value = 0.0;

  VectorXd advantages;  // steps
  VectorXd returns;     // steps

  int records() const { return n_agents * n_steps; }
  int StepOf(int record) const { return record / n_agents; }

  // Fills advantages and returns.
  void ComputeAdvantages(double gamma, double lambda);
  // Standardises per-step advantages to zero mean and unit variance.
  void NormalizeAdvantages();

  ActorMinibatch ActorSlice(std::span<const int> record_ids) const;
  CriticMinibatch CriticSlice(std::span<const int> record_ids) const;
};

}  // namespace skylink::mappo

#endif  // SKYLINK_MAPPO_ROLLOUT_H_
