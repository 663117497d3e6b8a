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

#include "langaux/tape.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace langaux {
namespace {

Tensor GradTensor(const Tensor &like, const std::vector<double> &g) {
  return Tensor(like.shape(), g);
}

}  // namespace

Var Tape::Push(Tensor value, std::vector<int> inputs,
               std::function<void(Tape &, const Node &)> backward) {
  Node n;
  n.value = std::move(value);
  n.inputs = std::move(inputs);
  n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Tape::Accumulate(int id, std::span<const double> g) {
  Node &n = nodes_[id];
  if (n.grad.empty()) n.grad.assign(n.value.size(), 0.0);
  for (size_t i = 0; i < g.size(); ++i) n.grad[i] += g[i];
}

Var Tape::Param(Tensor *param) {
  Var v = Push(Tensor(param->shape(), param->values()), {}, nullptr);
  nodes_[v.id].param = param;
  return v;
}

Var Tape::Constant(Tensor value) { return Push(std::move(value), {}, nullptr); }

Var Tape::Linear(Var x, Var w, Var b) {
  Tensor y = LinearForward(value(x), value(w), value(b));
  return Push(std::move(y), {x.id, w.id, b.id}, [](Tape &t, const Node &n) {
    const int x = n.inputs[0], w = n.inputs[1];
    const Tensor dy = GradTensor(n.value, n.grad);
    LinearGrads g = LinearBackward(t.nodes_[x].value, t.nodes_[w].value, dy);
    t.Accumulate(x, g.dx.data());
    t.Accumulate(w, g.dw.data());
    t.Accumulate(n.inputs[2], g.db.data());
  });
}

Var Tape::Tanh(Var x) {
  Tensor y = value(x);
  for (double &v : y.values()) v = std::tanh(v);
  return Push(std::move(y), {x.id}, [](Tape &t, const Node &n) {
    std::vector<double> g(n.grad.size());
    for (size_t i = 0; i < g.size(); ++i) {
      g[i] = n.grad[i] * (1.0 - n.value[i] * n.value[i]);
    }
    t.Accumulate(n.inputs[0], g);
  });
}

Var Tape::Add(Var a, Var b) {
  if (!value(a).SameShape(value(b))) {
    throw ShapeError("add: " + value(a).ShapeString() + " vs " +
                     value(b).ShapeString());
  }
  Tensor y = value(a);
  for (int64_t i = 0; i < y.size(); ++i) y[i] += value(b)[i];
  return Push(std::move(y), {a.id, b.id}, [](Tape &t, const Node &n) {
    t.Accumulate(n.inputs[0], n.grad);
    t.Accumulate(n.inputs[1], n.grad);
  });
}

Var Tape::Scale(Var a, double s) {
  Tensor y = value(a);
  for (double &v : y.values()) v *= s;
  return Push(std::move(y), {a.id}, [s](Tape &t, const Node &n) {
    std::vector<double> g(n.grad);
    for (double &v : g) v *= s;
    t.Accumulate(n.inputs[0], g);
  });
}

Var Tape::Sum(std::span<const Var> scalars) {
  double total = 0.0;
  std::vector<int> ids;
  for (Var v : scalars) {
    if (value(v).size() != 1) throw ShapeError("sum expects scalars");
    total += value(v)[0];
    ids.push_back(v.id);
  }
  return Push(Tensor::Scalar(total), std::move(ids), [](Tape &t, const Node &n) {
    for (int id : n.inputs) t.Accumulate(id, n.grad);
  });
}

Var Tape::WeightedSum(Var x, Tensor weights) {
  const Tensor &xv = value(x);
  if (xv.size() != weights.size()) {
    throw ShapeError("weighted sum: " + xv.ShapeString() + " vs " +
                     weights.ShapeString());
  }
  double total = 0.0;
  for (int64_t i = 0; i < xv.size(); ++i) total += xv[i] * weights[i];
  return Push(Tensor::Scalar(total), {x.id},
              [w = std::move(weights)](Tape &t, const Node &n) {
                std::vector<double> g(w.values());
                for (double &v : g) v *= n.grad[0];
                t.Accumulate(n.inputs[0], g);
              });
}

Var Tape::Row(Var x, int r) {
  const Tensor &xv = value(x);
  if (r < 0 || r >= xv.rows()) throw ShapeError("row index out of range");
  const auto row = xv.row(r);
  return Push(Tensor::Vector({row.begin(), row.end()}), {x.id},
              [r](Tape &t, const Node &n) {
                const Node &src = t.nodes_[n.inputs[0]];
                std::vector<double> g(src.value.size(), 0.0);
                const int cols = src.value.cols();
                for (int c = 0; c < cols; ++c) g[r * cols + c] = n.grad[c];
                t.Accumulate(n.inputs[0], g);
              });
}

Var Tape::Gather(Var x, std::vector<int> idx) {
  const Tensor &xv = value(x);
  const int cols = xv.cols();
  Tensor y({static_cast<int>(idx.size()), cols});
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= xv.rows()) {
      throw ShapeError("gather index " + std::to_string(idx[i]) + " out of range");
    }
    for (int c = 0; c < cols; ++c) y.at(static_cast<int>(i), c) = xv.at(idx[i], c);
  }
  return Push(std::move(y), {x.id},
              [idx = std::move(idx)](Tape &t, const Node &n) {
                const Node &src = t.nodes_[n.inputs[0]];
                std::vector<double> g(src.value.size(), 0.0);
                const int cols = src.value.cols();
                for (size_t i = 0; i < idx.size(); ++i) {
                  for (int c = 0; c < cols; ++c) {
                    g[idx[i] * cols + c] += n.grad[i * cols + c];
                  }
                }
                t.Accumulate(n.inputs[0], g);
              });
}

Var Tape::Concat(Var a, Var b) {
  const Tensor &av = value(a), &bv = value(b);
  if (av.rows() != bv.rows()) {
    throw ShapeError("concat: " + av.ShapeString() + " vs " + bv.ShapeString());
  }
  const int rows = av.rows(), ca = av.cols(), cb = bv.cols();
  Tensor y = av.rank() == 1 && bv.rank() == 1 ? Tensor({ca + cb})
                                              : Tensor({rows, ca + cb});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < ca; ++c) y.at(r, c) = av.at(r, c);
    for (int c = 0; c < cb; ++c) y.at(r, ca + c) = bv.at(r, c);
  }
  return Push(std::move(y), {a.id, b.id}, [rows, ca, cb](Tape &t, const Node &n) {
    std::vector<double> ga(static_cast<size_t>(rows) * ca),
        gb(static_cast<size_t>(rows) * cb);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < ca; ++c) ga[r * ca + c] = n.grad[r * (ca + cb) + c];
      for (int c = 0; c < cb; ++c) gb[r * cb + c] = n.grad[r * (ca + cb) + ca + c];
    }
    t.Accumulate(n.inputs[0], ga);
    t.Accumulate(n.inputs[1], gb);
  });
}

Var Tape::ConcatBroadcast(Var x, Var v) {
  const Tensor &xv = value(x), &vv = value(v);
  const int rows = xv.rows(), ca = xv.cols(), cb = static_cast<int>(vv.size());
  Tensor y({rows, ca + cb});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < ca; ++c) y.at(r, c) = xv.at(r, c);
    for (int c = 0; c < cb; ++c) y.at(r, ca + c) = vv[c];
  }
  return Push(std::move(y), {x.id, v.id}, [rows, ca, cb](Tape &t, const Node &n) {
    std::vector<double> gx(static_cast<size_t>(rows) * ca), gv(cb, 0.0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < ca; ++c) gx[r * ca + c] = n.grad[r * (ca + cb) + c];
      for (int c = 0; c < cb; ++c) gv[c] += n.grad[r * (ca + cb) + ca + c];
    }
    t.Accumulate(n.inputs[0], gx);
    t.Accumulate(n.inputs[1], gv);
  });
}

Var Tape::SoftmaxCrossEntropy(Var logits, int target) {
  LossGrad lg = langaux::SoftmaxCrossEntropy(value(logits).data(), target);
  return Push(Tensor::Scalar(lg.loss), {logits.id},
              [g = std::move(lg.grad)](Tape &t, const Node &n) {
                std::vector<double> d(g);
                for (double &v : d) v *= n.grad[0];
                t.Accumulate(n.inputs[0], d);
              });
}

Var Tape::MaskedBce(Var logits, std::vector<double> targets,
                    UndeterminedMode mode) {
  MaskedBceResult r = langaux::MaskedBce(value(logits).data(), targets, mode);
  return Push(Tensor::Scalar(r.loss), {logits.id},
              [g = std::move(r.grad)](Tape &t, const Node &n) {
                std::vector<double> d(g);
                for (double &v : d) v *= n.grad[0];
                t.Accumulate(n.inputs[0], d);
              });
}

Var Tape::Attention(Var q, Var k, Var v) {
  AttentionResult r = ScaledDotAttention(value(q), value(k), value(v));
  return Push(std::move(r.output), {q.id, k.id, v.id},
              [w = std::move(r.weights)](Tape &t, const Node &n) {
                const Tensor &qv = t.nodes_[n.inputs[0]].value;
                const Tensor &kv = t.nodes_[n.inputs[1]].value;
                const Tensor &vv = t.nodes_[n.inputs[2]].value;
                AttentionGrads g = ScaledDotAttentionBackward(
                    qv, kv, vv, w, GradTensor(n.value, n.grad));
                t.Accumulate(n.inputs[0], g.dq.data());
                t.Accumulate(n.inputs[1], g.dk.data());
                t.Accumulate(n.inputs[2], g.dv.data());
              });
}

Var Tape::LayerNorm(Var x, Var gain, Var bias) {
  LayerNormResult r = LayerNormForward(value(x), value(gain), value(bias));
  Tensor out = std::move(r.output);
  return Push(std::move(out), {x.id, gain.id, bias.id},
              [r = std::move(r)](Tape &t, const Node &n) {
                const Tensor &xv = t.nodes_[n.inputs[0]].value;
                const Tensor &gv = t.nodes_[n.inputs[1]].value;
                LayerNormGrads g =
                    LayerNormBackward(xv, gv, r, GradTensor(n.value, n.grad));
                t.Accumulate(n.inputs[0], g.dx.data());
                t.Accumulate(n.inputs[1], g.dgain.data());
                t.Accumulate(n.inputs[2], g.dbias.data());
              });
}

Var Tape::Gru(Var x, const std::array<Var, GruParams::kNumTensors> &params) {
  GruParams p;
  auto slots = p.Tensors();
  std::vector<int> inputs = {x.id};
  for (int i = 0; i < GruParams::kNumTensors; ++i) {
    *slots[i] = value(params[i]);
    inputs.push_back(params[i].id);
  }
  GruTrace trace = GruForward(value(x), p);
  Tensor states = trace.states;
  return Push(std::move(states), std::move(inputs),
              [p = std::move(p), trace = std::move(trace)](Tape &t,
                                                           const Node &n) {
                const Tensor &xv = t.nodes_[n.inputs[0]].value;
                GruGrads g =
                    GruBackward(xv, p, trace, GradTensor(n.value, n.grad));
                t.Accumulate(n.inputs[0], g.dx.data());
                auto grads = g.dparams.Tensors();
                for (int i = 0; i < GruParams::kNumTensors; ++i) {
                  t.Accumulate(n.inputs[i + 1], grads[i]->data());
                }
              });
}

void Tape::Backward(Var loss) {
  if (value(loss).size() != 1) {
    throw ShapeError("backward needs a scalar, got " + value(loss).ShapeString());
  }
  for (Node &n : nodes_) n.grad.clear();
  nodes_[loss.id].grad = {1.0};
  for (int i = loss.id; i >= 0; --i) {
    Node &n = nodes_[i];
    if (n.grad.empty()) continue;
    if (n.param != nullptr) {
      n.param->EnsureGrad();
      std::vector<double> &pg = n.param->grad();
      for (size_t j = 0; j < pg.size(); ++j) pg[j] += n.grad[j];
    } else if (n.backward) {
      n.backward(*this, n);
    }
  }
}

}  // namespace langaux
