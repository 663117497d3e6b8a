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

#ifndef LANGAUX_TAPE_H_
#define LANGAUX_TAPE_H_

#include <array>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "langaux/gru.h"
#include "langaux/kernels.h"
#include "langaux/tensor.h"

namespace langaux {

// Handle to a value recorded on a Tape.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Records a computation built from the kernels and replays it backwards.
// Parameter leaves accumulate their gradient into the Tensor they were
// registered from, so a parameter used in several places gets the sum.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  // Leaf whose gradient is added to param->grad(). The tensor must outlive
  // the tape and must not be resized while recorded.
  Var Param(Tensor *param);
  Var Constant(Tensor value);

  const Tensor &value(Var v) const { return nodes_[v.id].value; }
  // Gradient of the last Backward() target with respect to v; empty if v
  // did not influence it.
  const std::vector<double> &grad(Var v) const { return nodes_[v.id].grad; }
  int size() const { return static_cast<int>(nodes_.size()); }

  Var Linear(Var x, Var w, Var b);
  Var Tanh(Var x);
  Var Add(Var a, Var b);
  Var Scale(Var a, double s);
  // Sum of scalar values.
  Var Sum(std::span<const Var> scalars);
  // Scalar sum of x * weights elementwise; weights must match x's size.
  Var WeightedSum(Var x, Tensor weights);
  // Row r of a matrix as a rank-1 vector.
  Var Row(Var x, int r);
  // Rows idx of a matrix; repeated indices are allowed.
  Var Gather(Var x, std::vector<int> idx);
  // Row-wise concatenation [a, b]; both must have the same number of rows.
  Var Concat(Var a, Var b);
  // Appends vector v to every row of x: [n x a] -> [n x (a + |v|)].
  Var ConcatBroadcast(Var x, Var v);
  Var SoftmaxCrossEntropy(Var logits, int target);
  Var MaskedBce(Var logits, std::vector<double> targets, UndeterminedMode mode);
  Var Attention(Var q, Var k, Var v);
  Var LayerNorm(Var x, Var gain, Var bias);
  // GRU over x [T x D]; returns all states [T x H].
  Var Gru(Var x, const std::array<Var, GruParams::kNumTensors> &params);

  // Reverse pass from a scalar. Can be called once per recorded graph.
  void Backward(Var loss);

 private:
  struct Node {
    Tensor value;
    std::vector<double> grad;
    Tensor *param = nullptr;
    std::vector<int> inputs;
    // Reads this node's grad and accumulates into its inputs.
    std::function<void(Tape &, const Node &)> backward;
  };

  Var Push(Tensor value, std::vector<int> inputs,
           std::function<void(Tape &, const Node &)> backward);
  // Accumulates g into the gradient of node id.
  void Accumulate(int id, std::span<const double> g);

  std::deque<Node> nodes_;
};

}  // namespace langaux

#endif  // LANGAUX_TAPE_H_
