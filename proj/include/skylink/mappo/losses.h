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

#ifndef SKYLINK_MAPPO_LOSSES_H_
#define SKYLINK_MAPPO_LOSSES_H_

#include "skylink/mappo/config.h"
#include "skylink/mappo/rollout.h"
#include "skylink/nn/policy.h"

namespace skylink::mappo {

struct ActorLossTerms {
  double loss = 0.0;       // value minimised by the optimiser
  double surrogate = 0.0;  // mean clipped surrogate
  double entropy = 0.0;
  double kl = 0.0;         // mean KL(old || new)
  double clip_fraction = 0.0;
  bool finite = true;      // false if any probability ratio is non-finite
};

// loss = -mean(min(r A, clip(r, 1 - eps, 1 + eps) A)) - sigma S + beta mean KL(old || new)
// with r = exp(log pi_new - log pi_old). Writes dloss/dparams (policy layout)
// into `grad` when non-null.
ActorLossTerms ActorLoss(const nn::GaussianPolicy& policy, const ActorMinibatch& mb,
                         const TrainerConfig& cfg, Eigen::VectorXd* grad = nullptr);

// mean(max((V - R)^2, (clip(V, V_old - eps, V_old + eps) - R)^2)). Writes
// dloss/dV into `dvalues` when non-null.
double CriticLoss(const VectorXd& values, const CriticMinibatch& mb, double clip,
                  VectorXd* dvalues = nullptr);

}  // namespace skylink::mappo

#endif  // SKYLINK_MAPPO_LOSSES_H_
