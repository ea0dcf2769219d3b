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

#ifndef SKYLINK_MAPPO_CRITIC_H_
#define SKYLINK_MAPPO_CRITIC_H_

#include <cstdint>
#include <memory>
#include <string>

#include <json.hpp>

#include "skylink/common/rng.h"
#include "skylink/mappo/rollout.h"
#include "skylink/nn/adam.h"
#include "skylink/nn/dense.h"
#include "skylink/qsim/spsa.h"
#include "skylink/qsim/vqc.h"

namespace skylink::mappo {

struct WeightCount {
  int classical = 0;
  int quantum = 0;
  int total() const { return classical + quantum; }
};

enum class CriticKind { kClassical, kQuantum };

// Classical: [|O|, X, X, 1] with tanh hidden layers.
// Quantum: pre [|O|, 4L] tanh, input scalings (4L), VQC angles (12L), post [4, 1].
struct CriticArch {
  CriticKind kind = CriticKind::kClassical;
  int width = 4;  // X
  int n_layers = 1;  // L
  qsim::ScalingFn scaling = qsim::ScalingFn::kIdentity;

  static CriticArch Classical(int width);
  static CriticArch Quantum(int n_layers, qsim::ScalingFn scaling);

  // Closed-form weight count for a global observation of length global_obs_dim.
  WeightCount Weights(int global_obs_dim) const;
};

struct CriticStepStats {
  double loss = 0.0;  // at the parameters before the step
  double grad_norm = 0.0;
};

// Centralised value function V(O) with its own optimiser state.
class Critic {
 public:
  virtual ~Critic() = default;

  virtual int input_dim() const = 0;
  virtual WeightCount weights() const = 0;
  virtual VectorXd Values(const MatrixXd& global_obs) const = 0;
  double Value(const VectorXd& global_obs) const { return Values(MatrixXd(global_obs))(0); }

  // One optimisation step on the clipped value loss.
  virtual CriticStepStats Step(const CriticMinibatch& mb, double clip) = 0;

  // Circuit evaluations issued so far, counted once per batch pass over a
  // parameter set.
  virtual long circuit_evaluations() const { return 0; }

  virtual std::unique_ptr<Critic> Clone() const = 0;
  virtual nlohmann::json ToJson() const = 0;
};

class ClassicalCritic : public Critic {
 public:
  ClassicalCritic(int input_dim, int width, double learning_rate, Rng& rng);

  int input_dim() const override { return net_.input_dim(); }
  WeightCount weights() const override { return {net_.parameter_count(), 0}; }
  VectorXd Values(const MatrixXd& global_obs) const override;
  CriticStepStats Step(const CriticMinibatch& mb, double clip) override;
  std::unique_ptr<Critic> Clone() const override;
  nlohmann::json ToJson() const override;

  // Loss and its exact parameter gradient at the current parameters.
  double LossAndGradient(const CriticMinibatch& mb, double clip, VectorXd* grad) const;

  const nn::DenseNet& net() const { return net_; }
  nn::DenseNet& mutable_net() { return net_; }

 private:
  nn::DenseNet net_;
  nn::Adam adam_;
};

// The VQC angles follow SPSA; the pre block, the input scalings and the post
// block follow Adam. One SPSA draw perturbs the angles together with the
// per-sample circuit inputs u = pre(O) * xi, and the same three batch passes
// (plus, minus, centre) yield the angle gradient and a per-sample estimate of
// dloss/du that is chained into the input scalings and the pre block. The
// post block gradient is exact.
class QuantumCritic : public Critic {
 public:
  QuantumCritic(int input_dim, int n_layers, qsim::ScalingFn scaling, double learning_rate,
                double spsa_first_step, Rng& rng, std::uint64_t spsa_seed);

  int input_dim() const override { return pre_.input_dim(); }
  WeightCount weights() const override;
  VectorXd Values(const MatrixXd& global_obs) const override;
  CriticStepStats Step(const CriticMinibatch& mb, double clip) override;
  long circuit_evaluations() const override { return circuit_evaluations_; }
  std::unique_ptr<Critic> Clone() const override;
  nlohmann::json ToJson() const override;

  const qsim::VqcSpec& vqc() const { return vqc_; }
  const nn::DenseNet& pre() const { return pre_; }
  const nn::DenseNet& post() const { return post_; }
  const qsim::Spsa& spsa() const { return spsa_; }

  // Circuit inputs u = pre(O) * xi (4L x B).
  MatrixXd CircuitInputs(const MatrixXd& global_obs) const;
  // <Z> outputs (4 x B) for inputs u and angles theta.
  MatrixXd Expectations(const MatrixXd& u, const VectorXd& theta) const;

 private:
  Eigen::VectorXd ClassicalParameters() const;
  void SetClassicalParameters(const VectorXd& flat);

  nn::DenseNet pre_;
  qsim::VqcSpec vqc_;  // holds the input scalings xi and the angles theta
  nn::DenseNet post_;
  nn::Adam adam_;
  qsim::Spsa spsa_;
  long circuit_evaluations_ = 0;
};

std::unique_ptr<Critic> MakeCritic(const CriticArch& arch, int input_dim, double learning_rate,
                                   double spsa_first_step, Rng& rng, std::uint64_t spsa_seed);

}  // namespace skylink::mappo

#endif  // SKYLINK_MAPPO_CRITIC_H_
