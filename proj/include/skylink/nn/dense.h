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

#ifndef SKYLINK_NN_DENSE_H_
#define SKYLINK_NN_DENSE_H_

#include <vector>

#include <Eigen/Dense>

#include "skylink/common/rng.h"

namespace skylink::nn {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Activation { kTanh, kIdentity };

struct DenseLayer {
  MatrixXd weight;  // out x in
  VectorXd bias;    // out
  Activation activation = Activation::kTanh;

  int in_dim() const { return static_cast<int>(weight.cols()); }
  int out_dim() const { return static_cast<int>(weight.rows()); }
};

// Activations recorded by a forward pass; column b holds sample b.
struct Tape {
  std::vector<MatrixXd> inputs;   // input to each layer
  std::vector<MatrixXd> outputs;  // post-activation output of each layer
};

// Chain of fully connected layers. Parameters are flattened layer by layer,
// weights row-major followed by the bias.
class DenseNet {
 public:
  DenseNet() = default;
  // Zero-initialised; `dims` = {in, hidden..., out}.
  DenseNet(const std::vector<int>& dims, Activation hidden, Activation output);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) init; the last layer's weights
  // are further multiplied by `output_scale`.
  static DenseNet Random(const std::vector<int>& dims, Activation hidden, Activation output,
                         Rng& rng, double output_scale = 1.0);

  int input_dim() const;
  int output_dim() const;
  int parameter_count() const { return parameter_count_; }
  bool empty() const { return layers_.empty(); }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  VectorXd Forward(const VectorXd& input) const;
  // Batched: one sample per column. Records activations if `tape` is given.
  MatrixXd Forward(const MatrixXd& input, Tape* tape) const;

  // Reverse pass for a batch. `upstream` is dLoss/dOutput (out x B). Adds the
  // parameter gradient into `param_grad` (size parameter_count) and returns
  // dLoss/dInput (in x B).
  MatrixXd Backward(const Tape& tape, const MatrixXd& upstream,
                    Eigen::Ref<VectorXd> param_grad) const;

  struct Gradients {
    VectorXd params;
    VectorXd input;
  };
  // Single-sample convenience wrapper around Forward + Backward.
  Gradients Backward(const VectorXd& input, const VectorXd& upstream) const;

  VectorXd Parameters() const;
  void SetParameters(const VectorXd& flat);

 private:
  void Recount();

  std::vector<DenseLayer> layers_;
  int parameter_count_ = 0;
};

}  // namespace skylink::nn

#endif  // SKYLINK_NN_DENSE_H_
