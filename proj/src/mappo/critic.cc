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

#include "skylink/mappo/critic.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "skylink/common/error.h"
#include "skylink/mappo/losses.h"
#include "skylink/nn/checkpoint.h"

namespace skylink::mappo {

CriticArch CriticArch::Classical(int width) {
  CriticArch a;
  a.kind = CriticKind::kClassical;
  a.width = width;
  return a;
}

CriticArch CriticArch::Quantum(int n_layers, qsim::ScalingFn scaling) {
  CriticArch a;
  a.kind = CriticKind::kQuantum;
  a.n_layers = n_layers;
  a.scaling = scaling;
  return a;
}

WeightCount CriticArch::Weights(int global_obs_dim) const {
  if (kind == CriticKind::kClassical) {
    const int x = width;
    return {(global_obs_dim + 1) * x + (x + 1) * x + (x + 1), 0};
  }
  const int features = qsim::kFeaturesPerLayer * n_layers;
  const int pre = (global_obs_dim + 1) * features;
  const int post = qsim::kVqcQubits + 1;
  return {pre + features + post, qsim::kAnsatzParamsPerLayer * n_layers};
}

ClassicalCritic::ClassicalCritic(int input_dim, int width, double learning_rate, Rng& rng)
    : net_(nn::DenseNet::Random({input_dim, width, width, 1}, nn::Activation::kTanh,
                                nn::Activation::kIdentity, rng)) {
  nn::AdamConfig cfg;
  cfg.learning_rate = learning_rate;
  adam_ = nn::Adam(net_.parameter_count(), cfg);
}

VectorXd ClassicalCritic::Values(const MatrixXd& global_obs) const {
  return net_.Forward(global_obs, nullptr).row(0).transpose();
}

double ClassicalCritic::LossAndGradient(const CriticMinibatch& mb, double clip,
                                        VectorXd* grad) const {
  nn::Tape tape;
  const VectorXd values = net_.Forward(mb.global_obs, &tape).row(0).transpose();
  VectorXd dvalues;
  const double loss = CriticLoss(values, mb, clip, grad ? &dvalues : nullptr);
  if (grad) {
    grad->setZero(net_.parameter_count());
    net_.Backward(tape, dvalues.transpose(), *grad);
  }
  return loss;
}

CriticStepStats ClassicalCritic::Step(const CriticMinibatch& mb, double clip) {
  VectorXd grad;
  CriticStepStats stats;
  stats.loss = LossAndGradient(mb, clip, &grad);
  if (!std::isfinite(stats.loss)) throw TrainingError("critic loss is not finite");
  stats.grad_norm = grad.norm();
  VectorXd params = net_.Parameters();
  adam_.Step(params, grad);
  net_.SetParameters(params);
  return stats;
}

std::unique_ptr<Critic> ClassicalCritic::Clone() const {
  return std::make_unique<ClassicalCritic>(*this);
}

nlohmann::json ClassicalCritic::ToJson() const {
  return {{"kind", "classical"}, {"net", nn::DenseNetToJson(net_)}};
}

QuantumCritic::QuantumCritic(int input_dim, int n_layers, qsim::ScalingFn scaling,
                             double learning_rate, double spsa_first_step, Rng& rng,
                             std::uint64_t spsa_seed)
    : spsa_(qsim::SpsaConfig::WithFirstStep(spsa_first_step), spsa_seed) {
  const int features = qsim::kFeaturesPerLayer * n_layers;
  pre_ = nn::DenseNet::Random({input_dim, features}, nn::Activation::kTanh, nn::Activation::kTanh,
                              rng);
  vqc_ = qsim::VqcSpec::Zero(n_layers, scaling);
  for (Eigen::Index k = 0; k < vqc_.theta.size(); ++k) {
    vqc_.theta(k) = Uniform(rng, -std::numbers::pi, std::numbers::pi);
  }
  post_ = nn::DenseNet::Random({qsim::kVqcQubits, 1}, nn::Activation::kIdentity,
                               nn::Activation::kIdentity, rng);
  nn::AdamConfig cfg;
  cfg.learning_rate = learning_rate;
  adam_ = nn::Adam(static_cast<int>(ClassicalParameters().size()), cfg);
}

WeightCount QuantumCritic::weights() const {
  return {static_cast<int>(ClassicalParameters().size()), vqc_.quantum_weight_count()};
}

VectorXd QuantumCritic::ClassicalParameters() const {
  VectorXd flat(pre_.parameter_count() + vqc_.xi.size() + post_.parameter_count());
  flat << pre_.Parameters(), vqc_.xi, post_.Parameters();
  return flat;
}

void QuantumCritic::SetClassicalParameters(const VectorXd& flat) {
  const int n_pre = pre_.parameter_count();
  const auto n_xi = vqc_.xi.size();
  pre_.SetParameters(flat.head(n_pre));
  vqc_.xi = flat.segment(n_pre, n_xi);
  post_.SetParameters(flat.tail(post_.parameter_count()));
}

MatrixXd QuantumCritic::CircuitInputs(const MatrixXd& global_obs) const {
  return (pre_.Forward(global_obs, nullptr).array().colwise() * vqc_.xi.array()).matrix();
}

MatrixXd QuantumCritic::Expectations(const MatrixXd& u, const VectorXd& theta) const {
  const int n_layers = vqc_.n_layers;
  MatrixXd z(qsim::kVqcQubits, u.cols());
  std::vector<double> x(static_cast<size_t>(u.rows()));
  const std::span<const double> angles(theta.data(), static_cast<size_t>(theta.size()));
  for (Eigen::Index b = 0; b < u.cols(); ++b) {
    for (Eigen::Index k = 0; k < u.rows(); ++k) x[k] = qsim::ApplyScaling(vqc_.scaling, u(k, b));
    const qsim::QuantumState state = qsim::PrepareState(n_layers, x, angles);
    for (int q = 0; q < qsim::kVqcQubits; ++q) z(q, b) = state.ExpectZ(q);
  }
  return z;
}

VectorXd QuantumCritic::Values(const MatrixXd& global_obs) const {
  const MatrixXd z = Expectations(CircuitInputs(global_obs), vqc_.theta);
  return post_.Forward(z, nullptr).row(0).transpose();
}

namespace {

VectorXd PerSampleLoss(const VectorXd& values, const CriticMinibatch& mb, double clip) {
  VectorXd out(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    const double vc = std::clamp(values(j), mb.old_values(j) - clip, mb.old_values(j) + clip);
    out(j) = std::max((values(j) - mb.returns(j)) * (values(j) - mb.returns(j)),
                      (vc - mb.returns(j)) * (vc - mb.returns(j)));
  }
  return out;
}

}  // namespace

CriticStepStats QuantumCritic::Step(const CriticMinibatch& mb, double clip) {
  const auto batch = mb.global_obs.cols();
  const auto features = vqc_.xi.size();
  const auto n_theta = vqc_.theta.size();

  nn::Tape pre_tape;
  const MatrixXd h = pre_.Forward(mb.global_obs, &pre_tape);
  const MatrixXd u = (h.array().colwise() * vqc_.xi.array()).matrix();

  // One Rademacher draw over the angles and every circuit input of the batch.
  const double c = spsa_.Perturbation();
  const VectorXd delta = spsa_.DrawDirection(static_cast<int>(n_theta + features * batch));
  const VectorXd d_theta = delta.head(n_theta);
  const MatrixXd d_u = Eigen::Map<const MatrixXd>(delta.data() + n_theta, features, batch);

  const MatrixXd z_plus = Expectations(u + c * d_u, vqc_.theta + c * d_theta);
  const MatrixXd z_minus = Expectations(u - c * d_u, vqc_.theta - c * d_theta);
  const MatrixXd z = Expectations(u, vqc_.theta);
  circuit_evaluations_ += 3;

  nn::Tape post_tape;
  const VectorXd values = post_.Forward(z, &post_tape).row(0).transpose();
  const VectorXd loss_plus = PerSampleLoss(post_.Forward(z_plus, nullptr).row(0).transpose(), mb, clip);
  const VectorXd loss_minus = PerSampleLoss(post_.Forward(z_minus, nullptr).row(0).transpose(), mb, clip);

  VectorXd dvalues;
  CriticStepStats stats;
  stats.loss = CriticLoss(values, mb, clip, &dvalues);
  if (!std::isfinite(stats.loss) || !loss_plus.allFinite() || !loss_minus.allFinite()) {
    throw TrainingError("critic loss is not finite");
  }

  const double inv_b = 1.0 / static_cast<double>(batch);
  const VectorXd g_theta =
      ((loss_plus.mean() - loss_minus.mean()) / (2.0 * c)) * d_theta.cwiseInverse();
  // Per-sample estimate of dloss/du; each sample's loss depends only on its own u.
  MatrixXd g_u = d_u.cwiseInverse();
  for (Eigen::Index b = 0; b < batch; ++b) {
    g_u.col(b) *= (loss_plus(b) - loss_minus(b)) / (2.0 * c) * inv_b;
  }

  VectorXd grad = VectorXd::Zero(pre_.parameter_count() + features + post_.parameter_count());
  post_.Backward(post_tape, dvalues.transpose(), grad.tail(post_.parameter_count()));
  grad.segment(pre_.parameter_count(), features) = (g_u.array() * h.array()).rowwise().sum();
  const MatrixXd d_h = (g_u.array().colwise() * vqc_.xi.array()).matrix();
  pre_.Backward(pre_tape, d_h, grad.head(pre_.parameter_count()));

  if (!grad.allFinite() || !g_theta.allFinite()) throw TrainingError("critic gradient is not finite");
  stats.grad_norm = std::sqrt(grad.squaredNorm() + g_theta.squaredNorm());

  VectorXd params = ClassicalParameters();
  adam_.Step(params, grad);
  SetClassicalParameters(params);
  spsa_.Apply(vqc_.theta, g_theta);
  return stats;
}

std::unique_ptr<Critic> QuantumCritic::Clone() const {
  return std::make_unique<QuantumCritic>(*this);
}

nlohmann::json QuantumCritic::ToJson() const {
  return {{"kind", "quantum"},
          {"pre", nn::DenseNetToJson(pre_)},
          {"vqc", qsim::VqcToJson(vqc_)},
          {"post", nn::DenseNetToJson(post_)}};
}

std::unique_ptr<Critic> MakeCritic(const CriticArch& arch, int input_dim, double learning_rate,
                                   double spsa_first_step, Rng& rng, std::uint64_t spsa_seed) {
  if (arch.kind == CriticKind::kClassical) {
    return std::make_unique<ClassicalCritic>(input_dim, arch.width, learning_rate, rng);
  }
  return std::make_unique<QuantumCritic>(input_dim, arch.n_layers, arch.scaling, learning_rate,
                                         spsa_first_step, rng, spsa_seed);
}

}  // namespace skylink::mappo
