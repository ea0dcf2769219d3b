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

#include "skylink/mappo/config.h"

#include "skylink/common/error.h"

namespace skylink::mappo {

void TrainerConfig::Validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must be in [0, 1]");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) throw ConfigError("gae_lambda must be in [0, 1]");
  if (!(clip > 0.0 && clip < 1.0)) throw ConfigError("clip must be in (0, 1)");
  if (entropy_coef < 0.0 || kl_coef < 0.0) throw ConfigError("coefficients must be non-negative");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (rollout_steps < 1 || epochs < 1 || minibatch < 1) throw ConfigError("batch sizes must be positive");
  if (eval_interval < 1 || eval_episodes < 1) throw ConfigError("evaluation settings must be positive");
  if (max_consecutive_aborts < 1) throw ConfigError("max_consecutive_aborts must be positive");
  if (!(spsa_first_step > 0.0)) throw ConfigError("spsa_first_step must be positive");
}

}  // namespace skylink::mappo
