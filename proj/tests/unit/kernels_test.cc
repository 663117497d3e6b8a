// Copyright 2026 The langaux Authors.
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

#include "langaux/kernels.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace langaux {
namespace {

Tensor RandomTensor(std::vector<int> shape, std::mt19937_64 &rng,
                    double scale = 1.0) {
  Tensor t(std::move(shape));
  std::normal_distribution<double> n(0.0, scale);
  for (double &v : t.values()) v = n(rng);
  return t;
}

TEST(LinearTest, MatchesNaiveProduct) {
  std::mt19937_64 rng(1);
  const Tensor x = RandomTensor({4, 3}, rng);
  const Tensor w = RandomTensor({5, 3}, rng);
  const Tensor b = RandomTensor({5}, rng);
  const Tensor y = LinearForward(x, w, b);
  ASSERT_EQ(y.shape(), (std::vector<int>{4, 5}));
  for (int i = 0; i < 4; ++i) {
    for (int o = 0; o < 5; ++o) {
      long double want = b[o];
      for (int k = 0; k < 3; ++k) want += (long double)x.at(i, k) * w.at(o, k);
      EXPECT_NEAR(y.at(i, o), static_cast<double>(want), 1e-12);
    }
  }
}

TEST(LinearTest, RankOneInputKeepsRank) {
  const Tensor y = LinearForward(Tensor::Vector({1, 2}),
                                 Tensor::Matrix(1, 2, {3, 4}), Tensor::Vector({5}));
  ASSERT_EQ(y.rank(), 1);
  EXPECT_EQ(y[0], 16.0);
}

TEST(LinearTest, BackwardMatchesNaiveGradients) {
  std::mt19937_64 rng(2);
  const Tensor x = RandomTensor({3, 4}, rng);
  const Tensor w = RandomTensor({2, 4}, rng);
  const Tensor dy = RandomTensor({3, 2}, rng);
  const LinearGrads g = LinearBackward(x, w, dy);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 4; ++k) {
      double want = 0;
      for (int o = 0; o < 2; ++o) want += dy.at(i, o) * w.at(o, k);
      EXPECT_NEAR(g.dx.at(i, k), want, 1e-12);
    }
  }
  for (int o = 0; o < 2; ++o) {
    double db = 0;
    for (int i = 0; i < 3; ++i) db += dy.at(i, o);
    EXPECT_NEAR(g.db[o], db, 1e-12);
    for (int k = 0; k < 4; ++k) {
      double want = 0;
      for (int i = 0; i < 3; ++i) want += dy.at(i, o) * x.at(i, k);
      EXPECT_NEAR(g.dw.at(o, k), want, 1e-12);
    }
  }
}

TEST(LinearTest, ShapeMismatchThrows) {
  EXPECT_THROW(LinearForward(Tensor({2, 3}), Tensor({4, 2}), Tensor({4})), ShapeError);
  EXPECT_THROW(LinearForward(Tensor({2, 3}), Tensor({4, 3}), Tensor({3})), ShapeError);
}

TEST(SoftmaxTest, SumsToOneAndIsShiftInvariant) {
  const std::vector<double> a = Softmax(std::vector<double>{1, 2, 3});
  const std::vector<double> b = Softmax(std::vector<double>{1001, 1002, 1003});
  double sum = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    sum += a[i];
    EXPECT_NEAR(a[i], b[i], 1e-15);
  }
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(CrossEntropyTest, HandValueAndGradient) {
  const LossGrad r = SoftmaxCrossEntropy(std::vector<double>{0.0, std::log(3.0)}, 1);
  EXPECT_NEAR(r.loss, -std::log(0.75), 1e-15);
  EXPECT_NEAR(r.grad[0], 0.25, 1e-15);
  EXPECT_NEAR(r.grad[1], -0.25, 1e-15);
}

TEST(CrossEntropyTest, StableForLargeLogits) {
  const LossGrad r = SoftmaxCrossEntropy(std::vector<double>{1e4, 0.0, -1e4}, 0);
  EXPECT_EQ(r.loss, 0.0);
  const LossGrad s = SoftmaxCrossEntropy(std::vector<double>{1e4, 0.0}, 1);
  EXPECT_NEAR(s.loss, 1e4, 1e-9);
}

TEST(CrossEntropyTest, RejectsInvalidInput) {
  EXPECT_THROW(SoftmaxCrossEntropy(std::vector<double>{1.0}, 0), std::invalid_argument);
  EXPECT_THROW(SoftmaxCrossEntropy(std::vector<double>{1.0, 2.0}, 2), std::invalid_argument);
  EXPECT_THROW(SoftmaxCrossEntropy(std::vector<double>{1.0, 2.0}, -1), std::invalid_argument);
  EXPECT_THROW(SoftmaxCrossEntropy(
                   std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}, 0),
               std::invalid_argument);
}

double ReferenceBce(double logit, double y) {
  const double p = std::clamp(1.0 / (1.0 + std::exp(-logit)), kBceEpsilon,
                              1.0 - kBceEpsilon);
  return -(y * std::log(p) + (1 - y) * std::log(1 - p));
}

TEST(MaskedBceTest, MaskedModeAveragesActiveClasses) {
  const std::vector<double> logits{0.3, -1.2, 2.0, 0.7};
  const std::vector<double> y{1.0, 0.5, 0.0, 1.0};
  const MaskedBceResult r = MaskedBce(logits, y, UndeterminedMode::kMask);
  EXPECT_EQ(r.active, 3);
  EXPECT_FALSE(r.all_masked);
  const double want =
      (ReferenceBce(0.3, 1) + ReferenceBce(2.0, 0) + ReferenceBce(0.7, 1)) / 3;
  EXPECT_NEAR(r.loss, want, 1e-14);
  EXPECT_EQ(r.grad[1], 0.0);
  EXPECT_NEAR(r.grad[0], (Sigmoid(0.3) - 1.0) / 3, 1e-14);
  EXPECT_NEAR(r.grad[2], Sigmoid(2.0) / 3, 1e-14);
}

TEST(MaskedBceTest, LiteralModeUsesHalfTargets) {
  const std::vector<double> logits{0.3, -1.2};
  const std::vector<double> y{1.0, 0.5};
  const MaskedBceResult r = MaskedBce(logits, y, UndeterminedMode::kLiteral);
  EXPECT_EQ(r.active, 2);
  EXPECT_NEAR(r.loss, (ReferenceBce(0.3, 1) + ReferenceBce(-1.2, 0.5)) / 2, 1e-14);
  EXPECT_NEAR(r.grad[1], (Sigmoid(-1.2) - 0.5) / 2, 1e-14);
}

TEST(MaskedBceTest, AllMaskedIsZero) {
  const std::vector<double> logits{5.0, -5.0};
  const std::vector<double> y{0.5, 0.5};
  const MaskedBceResult r = MaskedBce(logits, y);
  EXPECT_TRUE(r.all_masked);
  EXPECT_EQ(r.loss, 0.0);
  EXPECT_EQ(r.grad, (std::vector<double>{0.0, 0.0}));
}

TEST(MaskedBceTest, ClampKeepsSaturatedLossFinite) {
  const std::vector<double> logits{-800.0, 800.0};
  const std::vector<double> y{1.0, 0.0};
  const MaskedBceResult r = MaskedBce(logits, y);
  EXPECT_TRUE(std::isfinite(r.loss));
  EXPECT_NEAR(r.loss, -std::log(kBceEpsilon), 1e-6);
}

TEST(MaskedBceTest, RejectsInvalidTargetsAndSizes) {
  const std::vector<double> logits{0.0, 0.0};
  EXPECT_THROW(MaskedBce(logits, std::vector<double>{0.3, 1.0}), std::invalid_argument);
  EXPECT_THROW(MaskedBce(logits, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(MaskedBceTest, MaskedClassesNeverChangeTheLoss) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> logits(8), y(8);
    for (int k = 0; k < 8; ++k) {
      logits[k] = n(rng);
      y[k] = (rng() % 3) * 0.5;
    }
    const MaskedBceResult a = MaskedBce(logits, y);
    for (int k = 0; k < 8; ++k) {
      if (y[k] == 0.5) logits[k] = n(rng);
    }
    EXPECT_EQ(MaskedBce(logits, y).loss, a.loss);
  }
}

TEST(AttentionTest, MatchesNaiveFormula) {
  std::mt19937_64 rng(3);
  const Tensor q = RandomTensor({2, 4}, rng);
  const Tensor k = RandomTensor({3, 4}, rng);
  const Tensor v = RandomTensor({3, 5}, rng);
  const AttentionResult r = ScaledDotAttention(q, k, v);
  for (int i = 0; i < 2; ++i) {
    std::vector<double> s(3);
    for (int j = 0; j < 3; ++j) {
      for (int d = 0; d < 4; ++d) s[j] += q.at(i, d) * k.at(j, d);
      s[j] /= 2.0;
    }
    const std::vector<double> w = Softmax(s);
    double row = 0;
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(r.weights.at(i, j), w[j], 1e-14);
      row += r.weights.at(i, j);
    }
    EXPECT_NEAR(row, 1.0, 1e-14);
    for (int c = 0; c < 5; ++c) {
      double want = 0;
      for (int j = 0; j < 3; ++j) want += w[j] * v.at(j, c);
      EXPECT_NEAR(r.output.at(i, c), want, 1e-13);
    }
  }
}

TEST(AttentionTest, OutputIsBitwiseInvariantToKeyPermutation) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor q = RandomTensor({3, 4}, rng);
    const Tensor k = RandomTensor({6, 4}, rng);
    const Tensor v = RandomTensor({6, 4}, rng);
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    Tensor kp({6, 4}), vp({6, 4});
    for (int j = 0; j < 6; ++j) {
      for (int d = 0; d < 4; ++d) {
        kp.at(j, d) = k.at(perm[j], d);
        vp.at(j, d) = v.at(perm[j], d);
      }
    }
    EXPECT_EQ(ScaledDotAttention(q, k, v).output.values(),
              ScaledDotAttention(q, kp, vp).output.values());
  }
}

TEST(AttentionTest, ShapeMismatchThrows) {
  EXPECT_THROW(ScaledDotAttention(Tensor({2, 4}), Tensor({3, 3}), Tensor({3, 4})),
               ShapeError);
  EXPECT_THROW(ScaledDotAttention(Tensor({2, 4}), Tensor({3, 4}), Tensor({2, 4})),
               ShapeError);
}

TEST(LayerNormTest, NormalizesRows) {
  std::mt19937_64 rng(6);
  const Tensor x = RandomTensor({4, 7}, rng, 5.0);
  Tensor gain({7}), bias({7});
  for (int i = 0; i < 7; ++i) gain[i] = 1.0;
  const LayerNormResult r = LayerNormForward(x, gain, bias);
  for (int i = 0; i < 4; ++i) {
    double mean = 0, var = 0;
    for (int c = 0; c < 7; ++c) mean += r.output.at(i, c);
    mean /= 7;
    for (int c = 0; c < 7; ++c) var += std::pow(r.output.at(i, c) - mean, 2);
    var /= 7;
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(var, 1.0, 1e-5);
  }
}

TEST(LayerNormTest, AppliesGainAndBias) {
  const Tensor x = Tensor::Matrix(1, 2, {1.0, 3.0});
  const LayerNormResult r =
      LayerNormForward(x, Tensor::Vector({2.0, 3.0}), Tensor::Vector({10.0, 20.0}));
  const double z = 1.0 / std::sqrt(1.0 + kLayerNormEpsilon);
  EXPECT_NEAR(r.output.at(0, 0), 10.0 - 2.0 * z, 1e-14);
  EXPECT_NEAR(r.output.at(0, 1), 20.0 + 3.0 * z, 1e-14);
}

TEST(LayerNormTest, RejectsSingleColumnRows) {
  EXPECT_THROW(LayerNormForward(Tensor({2, 1}), Tensor({1}), Tensor({1})),
               std::invalid_argument);
}

TEST(KernelsTest, ForwardIsBitwiseDeterministic) {
  std::mt19937_64 rng(8);
  const Tensor x = RandomTensor({5, 6}, rng);
  const Tensor w = RandomTensor({4, 6}, rng);
  const Tensor b = RandomTensor({4}, rng);
  EXPECT_EQ(LinearForward(x, w, b).values(), LinearForward(x, w, b).values());
}

}  // namespace
}  // namespace langaux
