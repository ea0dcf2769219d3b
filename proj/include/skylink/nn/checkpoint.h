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

#ifndef SKYLINK_NN_CHECKPOINT_H_
#define SKYLINK_NN_CHECKPOINT_H_

#include <json.hpp>

#include "skylink/nn/dense.h"
#include "skylink/nn/policy.h"

namespace skylink::nn {

inline constexpr int kCheckpointVersion = 1;

// {"version", "layers": [{"in", "out", "activation", "weight" (row-major), "bias"}]}
nlohmann::json DenseNetToJson(const DenseNet& net);
DenseNet DenseNetFromJson(const nlohmann::json& j);

// DenseNet layout plus "log_std".
nlohmann::json PolicyToJson(const GaussianPolicy& policy);
GaussianPolicy PolicyFromJson(const nlohmann::json& j);

}  // namespace skylink::nn

#endif  // SKYLINK_NN_CHECKPOINT_H_
