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

#ifndef SKYLINK_MAPPO_EVALUATE_H_
#define SKYLINK_MAPPO_EVALUATE_H_

#include <cstdint>
#include <vector>

#include "skylink/common/rng.h"
#include "skylink/env/world.h"
#include "skylink/nn/policy.h"

namespace skylink::mappo {

// Decentralised execution: maps one aircraft's local observation to its
// desirability vector. Nothing global crosses this interface.
class ActorPolicy {
 public:
  virtual ~ActorPolicy() = default;
  virtual env::ActionVector Act(const env::Observation& obs) = 0;
};

// Deterministic mean action of a Gaussian policy.
class MeanActionPolicy : public ActorPolicy {
 public:
  explicit MeanActionPolicy(nn::GaussianPolicy policy) : policy_(std::move(policy)) {}
  env::ActionVector Act(const env::Observation& obs) override;

 private:
  nn::GaussianPolicy policy_;
};

// Independent Uniform(0, 1) desirabilities.
class UniformRandomPolicy : public ActorPolicy {
 public:
  UniformRandomPolicy(int action_dim, std::uint64_t seed);
  env::ActionVector Act(const env::Observation& obs) override;

 private:
  int action_dim_;
  Rng rng_;
};

struct EvalResult {
  double cr_mean = 0.0;
  double cr_std = 0.0;  // sample standard deviation over episodes
  std::vector<double> episode_cr;
};

// CR of one episode: sum over steps and aircraft of the path-to-ground flag.
double RunEpisode(ActorPolicy& policy, const env::ScenarioConfig& cfg, std::uint64_t world_seed);

// Episode e starts from InitWorld(cfg, DeriveSeed(seed, e)).
EvalResult Evaluate(ActorPolicy& policy, const env::ScenarioConfig& cfg, int n_episodes,
                    std::uint64_t seed);

}  // namespace skylink::mappo

#endif  // SKYLINK_MAPPO_EVALUATE_H_
