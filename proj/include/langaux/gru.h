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

#ifndef LANGAUX_GRU_H_
#define LANGAUX_GRU_H_

#include <array>
#include <string>
#include <vector>

#include "langaux/tensor.h"

namespace langaux {

// Single-layer GRU:
//   z = sigmoid(W_z x + U_z h + b_z)
//   r = sigmoid(W_r x + U_r h + b_r)
//   c = tanh(W_h x + U_h (r * h) + b_h)
//   h' = (1 - z) * h + z * c
// The initial hidden state is zero.
struct GruParams {
  static constexpr int kNumTensors = 9;

  Tensor w_z, u_z, b_z;
  Tensor w_r, u_r, b_r;
  Tensor w_h, u_h, b_h;

  // Zero-initialised parameters.
  static GruParams Create(int input_size, int hidden_size);

  int input_size() const { return w_z.cols(); }
  int hidden_size() const { return w_z.rows(); }

  std::array<Tensor *, kNumTensors> Tensors();
  std::array<const Tensor *, kNumTensors> Tensors() const;
  static const std::array<std::string, kNumTensors> &Names();
};

struct GruTrace {
  // All [T x H]; row t holds the value after consuming input t.
  Tensor states;
  Tensor update;
  Tensor reset;
  Tensor candidate;

  // Last hidden state, or zeros for an empty sequence.
  std::vector<double> Final() const;
};

// x is [T x D]. T may be zero.
GruTrace GruForward(const Tensor &x, const GruParams &params);

struct GruGrads {
  Tensor dx;
  GruParams dparams;
};

// Backpropagation through time given upstream gradients for every state row.
GruGrads GruBackward(const Tensor &x, const GruParams &params,
                     const GruTrace &trace, const Tensor &dstates);

}  // namespace langaux

#endif  // LANGAUX_GRU_H_
