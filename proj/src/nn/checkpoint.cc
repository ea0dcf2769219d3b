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

#include "skylink/nn/checkpoint.h"

#include <string>
#include <vector>

#include "skylink/common/error.h"

namespace skylink::nn {

namespace {

std::vector<double> ToStd(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd FromStd(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

nlohmann::json DenseNetToJson(const DenseNet& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& layer : net.layers()) {
    std::vector<double> w;
    w.reserve(layer.weight.size());
    for (int r = 0; r < layer.out_dim(); ++r)
      for (int c = 0; c < layer.in_dim(); ++c) w.push_back(layer.weight(r, c));
    layers.push_back({{"in", layer.in_dim()},
                      {"out", layer.out_dim()},
                      {"activation", layer.activation == Activation::kTanh ? "tanh" : "identity"},
                      {"weight", w},
                      {"bias", ToStd(layer.bias)}});
  }
  return {{"version", kCheckpointVersion}, {"layers", layers}};
}

DenseNet DenseNetFromJson(const nlohmann::json& j) {
  if (j.value("version", 0) != kCheckpointVersion) {
    throw ConfigError("checkpoint: unsupported version");
  }
  const auto& layers = j.at("layers");
  if (layers.empty()) throw ConfigError("checkpoint: no layers");
  std::vector<int> dims = {layers.front().at("in").get<int>()};
  for (const auto& l : layers) dims.push_back(l.at("out").get<int>());
  const auto act = [](const std::string& s) {
    if (s == "tanh") return Activation::kTanh;
    if (s == "identity") return Activation::kIdentity;
    throw ConfigError("checkpoint: unknown activation " + s);
  };
  DenseNet net(dims, Activation::kTanh, Activation::kIdentity);
  for (size_t i = 0; i < layers.size(); ++i) {
    DenseLayer& layer = net.mutable_layers()[i];
    const auto w = layers[i].at("weight").get<std::vector<double>>();
    const auto b = layers[i].at("bias").get<std::vector<double>>();
    if (layers[i].at("in").get<int>() != layer.in_dim() ||
        w.size() != static_cast<size_t>(layer.weight.size()) ||
        b.size() != static_cast<size_t>(layer.bias.size())) {
      throw ConfigError("checkpoint: layer " + std::to_string(i) + " shape mismatch");
    }
    for (int r = 0; r < layer.out_dim(); ++r)
      for (int c = 0; c < layer.in_dim(); ++c) layer.weight(r, c) = w[r * layer.in_dim() + c];
    layer.bias = FromStd(b);
    layer.activation = act(layers[i].at("activation").get<std::string>());
  }
  return net;
}

nlohmann::json PolicyToJson(const GaussianPolicy& policy) {
  nlohmann::json j = DenseNetToJson(policy.mean_net());
  j["log_std"] = ToStd(policy.log_std());
  return j;
}

GaussianPolicy PolicyFromJson(const nlohmann::json& j) {
  DenseNet net = DenseNetFromJson(j);
  VectorXd log_std = FromStd(j.at("log_std").get<std::vector<double>>());
  if (log_std.size() != net.output_dim()) throw ConfigError("checkpoint: log_std size mismatch");
  return GaussianPolicy(std::move(net), std::move(log_std));
}

}  // namespace skylink::nn
