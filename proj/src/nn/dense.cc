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

#include "skylink/nn/dense.h"

#include <cmath>
#include <string>

#include "skylink/common/error.h"

namespace skylink::nn {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void Activate(Activation act, MatrixXd& z) {
  if (act == Activation::kTanh) z = z.array().tanh().matrix();
}

}  // namespace

DenseNet::DenseNet(const std::vector<int>& dims, Activation hidden, Activation output) {
  Require(dims.size() >= 2, "DenseNet: need at least input and output dims");
  for (size_t i = 0; i + 1 < dims.size(); ++i) {
    Require(dims[i] > 0 && dims[i + 1] > 0, "DenseNet: dimensions must be positive");
    DenseLayer layer;
    layer.weight = MatrixXd::Zero(dims[i + 1], dims[i]);
    layer.bias = VectorXd::Zero(dims[i + 1]);
    layer.activation = i + 2 == dims.size() ? output : hidden;
    layers_.push_back(std::move(layer));
  }
  Recount();
}

DenseNet DenseNet::Random(const std::vector<int>& dims, Activation hidden, Activation output,
                          Rng& rng, double output_scale) {
  DenseNet net(dims, hidden, output);
  for (size_t l = 0; l < net.layers_.size(); ++l) {
    DenseLayer& layer = net.layers_[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in_dim()));
    const double scale = l + 1 == net.layers_.size() ? output_scale : 1.0;
    for (int r = 0; r < layer.out_dim(); ++r)
      for (int c = 0; c < layer.in_dim(); ++c) layer.weight(r, c) = scale * Uniform(rng, -bound, bound);
    for (int r = 0; r < layer.out_dim(); ++r) layer.bias(r) = Uniform(rng, -bound, bound) * scale;
  }
  return net;
}

void DenseNet::Recount() {
  parameter_count_ = 0;
  for (size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    Require(layer.bias.size() == layer.weight.rows(), "DenseNet: bias/weight mismatch");
    if (l > 0) {
      Require(layers_[l - 1].out_dim() == layer.in_dim(), "DenseNet: layer dims do not chain");
    }
    parameter_count_ += static_cast<int>(layer.weight.size() + layer.bias.size());
  }
}

int DenseNet::input_dim() const { return layers_.empty() ? 0 : layers_.front().in_dim(); }
int DenseNet::output_dim() const { return layers_.empty() ? 0 : layers_.back().out_dim(); }

VectorXd DenseNet::Forward(const VectorXd& input) const {
  if (input.size() != input_dim()) {
    throw ContractViolation("DenseNet::Forward: input has length " + std::to_string(input.size()) +
                            ", expected " + std::to_string(input_dim()));
  }
  VectorXd x = input;
  for (const DenseLayer& layer : layers_) {
    VectorXd z = layer.weight * x + layer.bias;
    if (layer.activation == Activation::kTanh) z = z.array().tanh().matrix();
    x = std::move(z);
  }
  return x;
}

MatrixXd DenseNet::Forward(const MatrixXd& input, Tape* tape) const {
  if (input.rows() != input_dim()) {
    throw ContractViolation("DenseNet::Forward: batch has " + std::to_string(input.rows()) +
                            " rows, expected " + std::to_string(input_dim()));
  }
  if (tape) {
    tape->inputs.clear();
    tape->outputs.clear();
  }
  MatrixXd x = input;
  for (const DenseLayer& layer : layers_) {
    MatrixXd z = layer.weight * x;
    z.colwise() += layer.bias;
    Activate(layer.activation, z);
    if (tape) {
      tape->inputs.push_back(std::move(x));
      tape->outputs.push_back(z);
    }
    x = std::move(z);
  }
  return x;
}

MatrixXd DenseNet::Backward(const Tape& tape, const MatrixXd& upstream,
                            Eigen::Ref<VectorXd> param_grad) const {
  Require(tape.inputs.size() == layers_.size(), "DenseNet::Backward: tape does not match net");
  Require(param_grad.size() == parameter_count_, "DenseNet::Backward: gradient size mismatch");
  Require(upstream.rows() == output_dim() && upstream.cols() == tape.outputs.back().cols(),
          "DenseNet::Backward: upstream gradient shape mismatch");

  // Offsets of each layer's block in the flat parameter vector.
  std::vector<int> offsets(layers_.size());
  int offset = 0;
  for (size_t l = 0; l < layers_.size(); ++l) {
    offsets[l] = offset;
    offset += static_cast<int>(layers_[l].weight.size() + layers_[l].bias.size());
  }

  MatrixXd grad = upstream;
  for (size_t li = layers_.size(); li-- > 0;) {
    const DenseLayer& layer = layers_[li];
    if (layer.activation == Activation::kTanh) {
      grad.array() *= 1.0 - tape.outputs[li].array().square();
    }
    const int in = layer.in_dim(), out = layer.out_dim();
    Eigen::Map<RowMajor> dw(param_grad.data() + offsets[li], out, in);
    dw.noalias() += grad * tape.inputs[li].transpose();
    param_grad.segment(offsets[li] + out * in, out) += grad.rowwise().sum();
    grad = layer.weight.transpose() * grad;
  }
  return grad;
}

DenseNet::Gradients DenseNet::Backward(const VectorXd& input, const VectorXd& upstream) const {
  Tape tape;
  Forward(MatrixXd(input), &tape);
  Gradients g;
  g.params = VectorXd::Zero(parameter_count_);
  g.input = Backward(tape, MatrixXd(upstream), g.params);
  return g;
}

VectorXd DenseNet::Parameters() const {
  VectorXd flat(parameter_count_);
  int offset = 0;
  for (const DenseLayer& layer : layers_) {
    const int in = layer.in_dim(), out = layer.out_dim();
    Eigen::Map<RowMajor>(flat.data() + offset, out, in) = layer.weight;
    offset += out * in;
    flat.segment(offset, out) = layer.bias;
    offset += out;
  }
  return flat;
}

void DenseNet::SetParameters(const VectorXd& flat) {
  Require(flat.size() == parameter_count_, "DenseNet::SetParameters: size mismatch");
  int offset = 0;
  for (DenseLayer& layer : layers_) {
    const int in = layer.in_dim(), out = layer.out_dim();
    layer.weight = Eigen::Map<const RowMajor>(flat.data() + offset, out, in);
    offset += out * in;
    layer.bias = flat.segment(offset, out);
    offset += out;
  }
}

}  // namespace skylink::nn
