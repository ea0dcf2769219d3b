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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "skylink/common/error.h"
#include "skylink/common/rng.h"
#include "skylink/nn/adam.h"
#include "skylink/nn/checkpoint.h"
#include "skylink/nn/dense.h"
#include "skylink/nn/policy.h"

namespace skylink::nn {
namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

VectorXd RandomVector(int n, Rng& rng, double scale = 1.0) {
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = Uniform(rng, -scale, scale);
  return v;
}

DenseNet RandomNet(Rng& rng) {
  const int depth = 1 + static_cast<int>(rng() % 3);
  std::vector<int> dims;
  for (int i = 0; i <= depth; ++i) dims.push_back(1 + static_cast<int>(rng() % 7));
  return DenseNet::Random(dims, Activation::kTanh, Activation::kIdentity, rng);
}

// Plain nested loops with no Eigen arithmetic.
std::vector<double> NaiveForward(const DenseNet& net, std::vector<double> x) {
  for (const DenseLayer& layer : net.layers()) {
    std::vector<double> y(layer.out_dim());
    for (int r = 0; r < layer.out_dim(); ++r) {
      double acc = layer.bias(r);
      for (int c = 0; c < layer.in_dim(); ++c) acc += layer.weight(r, c) * x[c];
      y[r] = layer.activation == Activation::kTanh ? std::tanh(acc) : acc;
    }
    x = std::move(y);
  }
  return x;
}

double RelativeError(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

TEST(DenseNetTest, ZeroNetGivesZeroOutput) {
  DenseNet net({3, 5, 2}, Activation::kTanh, Activation::kIdentity);
  EXPECT_EQ(net.Forward(VectorXd::Constant(3, 0.7)), VectorXd::Zero(2));
}

TEST(DenseNetTest, IdentityLayerEchoesInput) {
  DenseNet net({4, 4}, Activation::kTanh, Activation::kIdentity);
  net.mutable_layers()[0].weight = MatrixXd::Identity(4, 4);
  VectorXd x(4);
  x << 1.5, -2.0, 0.25, 9.0;
  EXPECT_EQ(net.Forward(x), x);
}

TEST(DenseNetTest, ForwardMatchesNaiveOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const DenseNet net = RandomNet(rng);
    const VectorXd x = RandomVector(net.input_dim(), rng, 2.0);
    const VectorXd y = net.Forward(x);
    const std::vector<double> oracle = NaiveForward(net, {x.data(), x.data() + x.size()});
    ASSERT_EQ(y.size(), static_cast<Eigen::Index>(oracle.size()));
    for (size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(y(i), oracle[i], 1e-12);
  }
}

TEST(DenseNetTest, BatchedForwardMatchesSingle) {
  Rng rng(12);
  const DenseNet net = DenseNet::Random({5, 8, 3}, Activation::kTanh, Activation::kIdentity, rng);
  MatrixXd batch(5, 6);
  for (int b = 0; b < 6; ++b) batch.col(b) = RandomVector(5, rng);
  const MatrixXd out = net.Forward(batch, nullptr);
  for (int b = 0; b < 6; ++b) EXPECT_TRUE(out.col(b).isApprox(net.Forward(VectorXd(batch.col(b))), 1e-14));
}

TEST(DenseNetTest, DimensionMismatchThrows) {
  DenseNet net({3, 2}, Activation::kTanh, Activation::kIdentity);
  EXPECT_THROW(net.Forward(VectorXd::Zero(4)), ContractViolation);
  EXPECT_THROW(DenseNet({3}, Activation::kTanh, Activation::kIdentity), ContractViolation);
  EXPECT_THROW(net.SetParameters(VectorXd::Zero(3)), ContractViolation);
}

TEST(DenseNetTest, ParameterCountIsSumOfElements) {
  DenseNet net({52, 10, 10, 1}, Activation::kTanh, Activation::kIdentity);
  EXPECT_EQ(net.parameter_count(), 52 * 10 + 10 + 10 * 10 + 10 + 10 + 1);
  EXPECT_EQ(net.Parameters().size(), net.parameter_count());
}

TEST(DenseNetTest, ParameterRoundTrip) {
  Rng rng(13);
  const DenseNet net = RandomNet(rng);
  DenseNet copy = net;
  const VectorXd p = RandomVector(net.parameter_count(), rng);
  copy.SetParameters(p);
  EXPECT_EQ(copy.Parameters(), p);
  // Row-major weights then bias, layer by layer.
  EXPECT_EQ(copy.layers()[0].weight(0, copy.layers()[0].in_dim() > 1 ? 1 : 0),
            p(copy.layers()[0].in_dim() > 1 ? 1 : 0));
}

TEST(DenseNetTest, GradientsMatchFiniteDifferences) {
  Rng rng(14);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    DenseNet net = RandomNet(rng);
    const VectorXd x = RandomVector(net.input_dim(), rng);
    const VectorXd up = RandomVector(net.output_dim(), rng);
    const auto loss = [&](const DenseNet& n, const VectorXd& in) { return up.dot(n.Forward(in)); };
    const DenseNet::Gradients g = net.Backward(x, up);

    const VectorXd p = net.Parameters();
    for (int i = 0; i < p.size(); ++i) {
      VectorXd pp = p, pm = p;
      pp(i) += h;
      pm(i) -= h;
      DenseNet np = net, nm = net;
      np.SetParameters(pp);
      nm.SetParameters(pm);
      const double fd = (loss(np, x) - loss(nm, x)) / (2 * h);
      ASSERT_LT(RelativeError(g.params(i), fd), 1e-4) << "trial " << trial << " param " << i;
    }
    for (int i = 0; i < x.size(); ++i) {
      VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const double fd = (loss(net, xp) - loss(net, xm)) / (2 * h);
      ASSERT_LT(RelativeError(g.input(i), fd), 1e-4) << "trial " << trial << " input " << i;
    }
  }
}

TEST(DenseNetTest, BatchedBackwardSumsSampleGradients) {
  Rng rng(15);
  const DenseNet net = DenseNet::Random({4, 6, 2}, Activation::kTanh, Activation::kIdentity, rng);
  MatrixXd x(4, 3), up(2, 3);
  for (int b = 0; b < 3; ++b) {
    x.col(b) = RandomVector(4, rng);
    up.col(b) = RandomVector(2, rng);
  }
  Tape tape;
  net.Forward(x, &tape);
  VectorXd grad = VectorXd::Zero(net.parameter_count());
  const MatrixXd din = net.Backward(tape, up, grad);
  VectorXd sum = VectorXd::Zero(net.parameter_count());
  for (int b = 0; b < 3; ++b) {
    const auto g = net.Backward(VectorXd(x.col(b)), VectorXd(up.col(b)));
    sum += g.params;
    EXPECT_TRUE(din.col(b).isApprox(g.input, 1e-12));
  }
  EXPECT_TRUE(grad.isApprox(sum, 1e-12));
}

TEST(DenseNetTest, ZeroUpstreamGivesZeroGradients) {
  Rng rng(16);
  const DenseNet net = RandomNet(rng);
  const auto g = net.Backward(RandomVector(net.input_dim(), rng), VectorXd::Zero(net.output_dim()));
  EXPECT_TRUE(g.params.isZero(0.0));
  EXPECT_TRUE(g.input.isZero(0.0));
}

TEST(DenseNetTest, LinearNetInputGradientIsTransposeProduct) {
  Rng rng(17);
  const DenseNet net = DenseNet::Random({5, 3}, Activation::kIdentity, Activation::kIdentity, rng);
  const VectorXd up = RandomVector(3, rng);
  const auto g = net.Backward(RandomVector(5, rng), up);
  EXPECT_EQ(g.input, VectorXd(net.layers()[0].weight.transpose() * up));
}

class PolicyTest : public ::testing::Test {
 protected:
  PolicyTest() : rng_(21) {
    policy_ = GaussianPolicy::Create(13, 4, {64, 64}, rng_, std::log(0.2), 0.5);
  }
  Rng rng_;
  GaussianPolicy policy_;
};

TEST_F(PolicyTest, CreateSetsShapesAndInitialMean) {
  EXPECT_EQ(policy_.obs_dim(), 13);
  EXPECT_EQ(policy_.action_dim(), 4);
  EXPECT_EQ(policy_.parameter_count(), 13 * 64 + 64 + 64 * 64 + 64 + 64 * 4 + 4 + 4);
  const VectorXd mean = policy_.Mean(RandomVector(13, rng_));
  for (int d = 0; d < 4; ++d) EXPECT_NEAR(mean(d), 0.5, 0.05);
}

TEST_F(PolicyTest, VanishingStdReturnsMean) {
  GaussianPolicy tight(policy_.mean_net(), VectorXd::Constant(4, -60.0));
  const VectorXd obs = RandomVector(13, rng_);
  const auto s = tight.Draw(obs, rng_);
  EXPECT_TRUE(s.action.isApprox(tight.Mean(obs), 1e-20));
}

TEST_F(PolicyTest, LogProbAtMean) {
  const VectorXd ls = RandomVector(4, rng_);
  const VectorXd mu = RandomVector(4, rng_);
  EXPECT_NEAR(GaussianLogProb(mu, mu, ls), -(ls.array() + 0.5 * kLog2Pi).sum(), 1e-12);
}

TEST_F(PolicyTest, DrawnLogProbIsExactDensity) {
  const VectorXd obs = RandomVector(13, rng_);
  const auto s = policy_.Draw(obs, rng_);
  double oracle = 0.0;
  for (int d = 0; d < 4; ++d) {
    const double sd = std::exp(policy_.log_std()(d));
    const double z = (s.action(d) - s.mean(d)) / sd;
    oracle += std::log(std::exp(-0.5 * z * z) / (sd * std::sqrt(2 * M_PI)));
  }
  EXPECT_NEAR(s.log_prob, oracle, 1e-10);
}

TEST_F(PolicyTest, SampleMeanConverges) {
  const VectorXd obs = RandomVector(13, rng_);
  const VectorXd mean = policy_.Mean(obs);
  const int n = 100000;
  VectorXd sum = VectorXd::Zero(4);
  for (int i = 0; i < n; ++i) sum += policy_.Draw(obs, rng_).action;
  const double bound = 3.0 * 0.2 / std::sqrt(static_cast<double>(n));
  for (int d = 0; d < 4; ++d) EXPECT_NEAR(sum(d) / n, mean(d), bound);
}

TEST_F(PolicyTest, EntropyClosedForm) {
  const double per_dim = std::log(0.2) + 0.5 * std::log(2 * M_PI * M_E);
  EXPECT_NEAR(policy_.Entropy(), 4 * per_dim, 1e-12);
}

TEST_F(PolicyTest, DrawIsDeterministicGivenSeed) {
  const VectorXd obs = RandomVector(13, rng_);
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(policy_.Draw(obs, a).action, policy_.Draw(obs, b).action);
}

TEST(GaussianGradTest, LogProbAndKlMatchFiniteDifferences) {
  Rng rng(22);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const VectorXd act = RandomVector(n, rng), mu = RandomVector(n, rng), ls = RandomVector(n, rng);
    const VectorXd mu0 = RandomVector(n, rng), ls0 = RandomVector(n, rng);
    VectorXd dm, dl, km, kl;
    GaussianLogProbGrad(act, mu, ls, &dm, &dl);
    GaussianKl(mu0, ls0, mu, ls, &km, &kl);
    for (int i = 0; i < n; ++i) {
      VectorXd mp = mu, mm = mu, lp = ls, lm = ls;
      mp(i) += h;
      mm(i) -= h;
      lp(i) += h;
      lm(i) -= h;
      EXPECT_LT(RelativeError(dm(i), (GaussianLogProb(act, mp, ls) - GaussianLogProb(act, mm, ls)) / (2 * h)), 1e-4);
      EXPECT_LT(RelativeError(dl(i), (GaussianLogProb(act, mu, lp) - GaussianLogProb(act, mu, lm)) / (2 * h)), 1e-4);
      EXPECT_LT(RelativeError(km(i), (GaussianKl(mu0, ls0, mp, ls) - GaussianKl(mu0, ls0, mm, ls)) / (2 * h)), 1e-4);
      EXPECT_LT(RelativeError(kl(i), (GaussianKl(mu0, ls0, mu, lp) - GaussianKl(mu0, ls0, mu, lm)) / (2 * h)), 1e-4);
    }
    // Entropy is linear in log_std with unit slope per dimension.
    GaussianPolicy p(DenseNet({1, n}, Activation::kTanh, Activation::kIdentity), ls);
    GaussianPolicy q(DenseNet({1, n}, Activation::kTanh, Activation::kIdentity), ls + VectorXd::Constant(n, h));
    EXPECT_NEAR((q.Entropy() - p.Entropy()) / h, n, 1e-6);
  }
}

TEST(GaussianGradTest, KlOfIdenticalIsZero) {
  VectorXd mu(2), ls(2);
  mu << 0.3, -0.2;
  ls << -1.0, 0.5;
  EXPECT_NEAR(GaussianKl(mu, ls, mu, ls), 0.0, 1e-15);
}

TEST(GaussianGradTest, KlMatchesMonteCarlo) {
  Rng rng(23);
  VectorXd m0(2), l0(2), m1(2), l1(2);
  m0 << 0.1, 0.4;
  l0 << -0.5, -1.0;
  m1 << 0.3, 0.2;
  l1 << -0.7, -0.6;
  const int n = 200000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    VectorXd x(2);
    for (int d = 0; d < 2; ++d) x(d) = m0(d) + std::exp(l0(d)) * StandardNormal(rng);
    acc += GaussianLogProb(x, m0, l0) - GaussianLogProb(x, m1, l1);
  }
  EXPECT_NEAR(acc / n, GaussianKl(m0, l0, m1, l1), 0.01);
}

TEST(AdamTest, ZeroGradientLeavesParameters) {
  Adam adam(3, {});
  VectorXd p(3);
  p << 1.0, -2.0, 3.0;
  const VectorXd before = p;
  adam.Step(p, VectorXd::Zero(3));
  EXPECT_EQ(p, before);
  EXPECT_EQ(adam.steps(), 1);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  Adam adam(3, {});
  VectorXd p = VectorXd::Zero(3);
  VectorXd g(3);
  g << 2.5, -0.01, 100.0;
  adam.Step(p, g);
  EXPECT_NEAR(p(0), -1e-4, 1e-9);
  EXPECT_NEAR(p(1), 1e-4, 1e-8);
  EXPECT_NEAR(p(2), -1e-4, 1e-9);
}

TEST(AdamTest, QuadraticBowlDecreases) {
  Rng rng(31);
  AdamConfig cfg;
  cfg.learning_rate = 0.01;
  const int n = 12;
  Adam adam(n, cfg);
  VectorXd p = RandomVector(n, rng, 3.0);
  const VectorXd scale = (RandomVector(n, rng).array().abs() + 0.5).matrix();
  const auto loss = [&] { return 0.5 * (scale.array() * p.array().square()).sum(); };
  const double start = loss();
  double prev = start;
  for (int step = 0; step < 500; ++step) {
    adam.Step(p, (scale.array() * p.array()).matrix());
    const double now = loss();
    if (step >= 20) EXPECT_LE(now, prev + 1e-12) << "step " << step;
    prev = now;
  }
  EXPECT_LT(prev, 0.05 * start);
}

TEST(AdamTest, NonFiniteGradientThrowsWithoutMutation) {
  Adam adam(2, {});
  VectorXd p(2);
  p << 1.0, 2.0;
  VectorXd g(2);
  g << 1.0, std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(adam.Step(p, g), TrainingError);
  EXPECT_EQ(p, VectorXd((VectorXd(2) << 1.0, 2.0).finished()));
  EXPECT_EQ(adam.steps(), 0);
  EXPECT_TRUE(adam.first_moment().isZero(0.0));
}

TEST(AdamTest, UpdatesAreDeterministic) {
  Rng rng(32);
  const VectorXd g = RandomVector(5, rng);
  Adam a(5, {}), b(5, {});
  VectorXd pa = VectorXd::Ones(5), pb = VectorXd::Ones(5);
  for (int i = 0; i < 10; ++i) {
    a.Step(pa, g);
    b.Step(pb, g);
  }
  EXPECT_EQ(pa, pb);
}

TEST(CheckpointTest, RoundTripPreservesPolicy) {
  Rng rng(41);
  const GaussianPolicy p = GaussianPolicy::Create(19, 5, {64, 64}, rng, -1.0, 0.5);
  const nlohmann::json j = PolicyToJson(p);
  const GaussianPolicy q = PolicyFromJson(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(p.Parameters(), q.Parameters());
  EXPECT_EQ(j.at("version").get<int>(), kCheckpointVersion);
}

TEST(CheckpointTest, ParameterCountMatchesSerializedRecount) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseNet net = RandomNet(rng);
    const nlohmann::json j = DenseNetToJson(net);
    int recount = 0;
    for (const auto& layer : j.at("layers")) {
      recount += static_cast<int>(layer.at("weight").size() + layer.at("bias").size());
    }
    EXPECT_EQ(recount, net.parameter_count());
  }
}

TEST(CheckpointTest, RejectsBadInput) {
  Rng rng(43);
  nlohmann::json j = DenseNetToJson(RandomNet(rng));
  nlohmann::json wrong_version = j;
  wrong_version["version"] = 99;
  EXPECT_THROW(DenseNetFromJson(wrong_version), ConfigError);
  j["layers"][0]["bias"].push_back(1.0);
  EXPECT_THROW(DenseNetFromJson(j), ConfigError);
}

}  // namespace
}  // namespace skylink::nn
