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

#include "skylink/mappo/evaluate.h"

#include <cmath>

#include "skylink/common/error.h"

namespace skylink::mappo {

env::ActionVector MeanActionPolicy::Act(const env::Observation& obs) {
  const Eigen::VectorXd mean =
      policy_.Mean(Eigen::Map<const Eigen::VectorXd>(obs.data(), static_cast<Eigen::Index>(obs.size())));
  return {mean.data(), mean.data() + mean.size()};
}

UniformRandomPolicy::UniformRandomPolicy(int action_dim, std::uint64_t seed)
    : action_dim_(action_dim), rng_(MixSeed(seed)) {}

env::ActionVector UniformRandomPolicy::Act(const env::Observation&) {
  env::ActionVector a(action_dim_);
  for (double& v : a) v = Uniform(rng_, 0.0, 1.0);
  return a;
}

double RunEpisode(ActorPolicy& policy, const env::ScenarioConfig& cfg, std::uint64_t world_seed) {
  env::WorldState world = env::InitWorld(cfg, world_seed);
  std::vector<env::Observation> obs = env::ObserveAll(world, cfg);
  std::vector<env::ActionVector> joint(cfg.n_aircraft);
  double cr = 0.0;
  bool done = false;
  while (!done) {
    for (int a = 0; a < cfg.n_aircraft; ++a) joint[a] = policy.Act(obs[a]);
    env::StepResult step = env::EnvStep(world, joint, cfg);
    for (int a = 0; a < cfg.n_aircraft; ++a) cr += step.ptg[a];
    world = std::move(step.world);
    obs = std::move(step.observations);
    done = step.done;
  }
  return cr;
}

EvalResult Evaluate(ActorPolicy& policy, const env::ScenarioConfig& cfg, int n_episodes,
                    std::uint64_t seed) {
  Require(n_episodes >= 1, "Evaluate: need at least one episode");
  EvalResult out;
  for (int e = 0; e < n_episodes; ++e) {
    out.episode_cr.push_back(RunEpisode(policy, cfg, DeriveSeed(seed, static_cast<std::uint64_t>(e))));
  }
  double sum = 0.0;
  for (double v : out.episode_cr) sum += v;
  out.cr_mean = sum / n_episodes;
  if (n_episodes > 1) {
    double ss = 0.0;
    for (double v : out.episode_cr) ss += (v - out.cr_mean) * (v - out.cr_mean);
    out.cr_std = std::sqrt(ss / (n_episodes - 1));
  }
  return out;
}

}  // namespace skylink::mappo
