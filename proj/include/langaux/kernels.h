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

#ifndef LANGAUX_KERNELS_H_
#define LANGAUX_KERNELS_H_

#include <span>
#include <vector>

#include "langaux/tensor.h"

// Forward and backward kernels for the differentiable pieces of the
// auxiliary objective. All reductions accumulate in ascending index order,
// so every kernel is bitwise deterministic.

namespace langaux {

// y = x W^T + b for x [n x in] (or a rank-1 [in]), W [out x in], b [out].
// The output has x's rank.
Tensor LinearForward(const Tensor &x, const Tensor &w, const Tensor &b);

struct LinearGrads {
  Tensor dx;
  Tensor dw;
  Tensor db;
};
LinearGrads LinearBackward(const Tensor &x, const Tensor &w, const Tensor &dy);

std::vector<double> Softmax(std::span<const double> logits);

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

// -log softmax(logits)[target] with max subtraction. Throws
// std::invalid_argument for fewer than two classes, an invalid target or
// non-finite logits.
LossGrad SoftmaxCrossEntropy(std::span<const double> logits, int target);

enum class UndeterminedMode {
  // 0.5 targets carry no loss and no gradient.
  kMask,
  // 0.5 targets are used as literal BCE targets.
  kLiteral,
};

inline constexpr double kBceEpsilon = 1e-7;

struct MaskedBceResult {
  double loss = 0.0;
  std::vector<double> grad;
  // Classes that contributed to the mean.
  int active = 0;
  bool all_masked = false;
};

// Mean over unmasked classes of BCE(clamp(sigmoid(logit), eps, 1 - eps), y).
// Targets must lie in {0, 0.5, 1}. With every class masked the loss is 0 and
// all_masked is set.
MaskedBceResult MaskedBce(std::span<const double> logits,
                          std::span<const double> targets,
                          UndeterminedMode mode = UndeterminedMode::kMask);

struct AttentionResult {
  Tensor output;   // [n_q x d_v]
  Tensor weights;  // [n_q x n_k], rows sum to one
};

// softmax(Q K^T / sqrt(d)) V with a single head. Per query, keys are
// accumulated in a canonical order (by score, then key and value contents),
// which makes the output bitwise invariant to a joint permutation of K and V.
AttentionResult ScaledDotAttention(const Tensor &q, const Tensor &k,
                                   const Tensor &v);

struct AttentionGrads {
  Tensor dq;
  Tensor dk;
  Tensor dv;
};
AttentionGrads ScaledDotAttentionBackward(const Tensor &q, const Tensor &k,
                                          const Tensor &v,
                                          const Tensor &weights,
                                          const Tensor &dout);

inline constexpr double kLayerNormEpsilon = 1e-5;

struct LayerNormResult {
  Tensor output;
  std::vector<double> mean;  // per row
  std::vector<double> rstd;  // per row, 1 / sqrt(var + eps)
};

// Row-wise (x - mean) / sqrt(var + eps) * gain + bias; var is the biased
// variance. Rows need at least two entries.
LayerNormResult LayerNormForward(const Tensor &x, const Tensor &gain,
                                 const Tensor &bias);

struct LayerNormGrads {
  Tensor dx;
  Tensor dgain;
  Tensor dbias;
};
LayerNormGrads LayerNormBackward(const Tensor &x, const Tensor &gain,
                                 const LayerNormResult &forward,
                                 const Tensor &dy);

double Sigmoid(double x);

}  // namespace langaux

#endif  // LANGAUX_KERNELS_H_
