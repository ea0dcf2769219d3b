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

#ifndef SKYLINK_MAPPO_CONFIG_H_
#define SKYLINK_MAPPO_CONFIG_H_

#include <cmath>
#include <vector>

namespace skylink::mappo {

struct TrainerConfig {
  double gamma = 0.99;
  double gae_lambda = 0.99;
  double clip = 0.2;
  double entropy_coef = 0.01;
  double kl_coef = 0.2;
  double learning_rate = 1e-4;

  int rollout_steps = 2000;
  int epochs = 5;
  int minibatch = 256;

  int eval_interval = 1000;
  int eval_episodes = 5;
  // Train gives up after this many rolled-back updates in a row.
  int max_consecutive_aborts = 3;

  std::vector<int> actor_hidden = {64, 64};
  double actor_init_log_std = std::log(0.2);
  double actor_output_bias = 0.5;

  // First SPSA step size for quantum critic angles.
  double spsa_first_step = 1e-4;

  // Throws ConfigError.
  void Validate() const;
};

}  // namespace skylink::mappo

#endif  // SKYLINK_MAPPO_CONFIG_H_
