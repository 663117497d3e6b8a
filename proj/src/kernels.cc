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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace langaux {
namespace {

void CheckFinite(std::span<const double> xs, const char *what) {
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + " contains a non-finite value");
    }
  }
}

Tensor LikeRows(const Tensor &x, int rows, int cols) {
  if (x.rank() == 1 && rows == 1) return Tensor({cols});
  return Tensor({rows, cols});
}

// Lexicographic comparison of two equal-length rows.
int CompareRows(std::span<const double> a, std::span<const double> b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

}  // namespace

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor LinearForward(const Tensor &x, const Tensor &w, const Tensor &b) {
  if (w.rank() != 2 || b.rank() != 1 || b.cols() != w.rows() ||
      x.cols() != w.cols()) {
    throw ShapeError("linear: x " + x.ShapeString() + ", W " + w.ShapeString() +
                     ", b " + b.ShapeString());
  }
  const int n = x.rows(), in = w.cols(), out = w.rows();
  Tensor y = LikeRows(x, n, out);
  const double *xp = x.values().data(), *wp = w.values().data();
  double *yp = y.values().data();
  for (int r = 0; r < n; ++r) {
    const double *xr = xp + static_cast<int64_t>(r) * in;
    for (int o = 0; o < out; ++o) {
      const double *wo = wp + static_cast<int64_t>(o) * in;
      double acc = 0.0;
      for (int i = 0; i < in; ++i) acc += wo[i] * xr[i];
      yp[static_cast<int64_t>(r) * out + o] = acc + b[o];
    }
  }
  return y;
}

LinearGrads LinearBackward(const Tensor &x, const Tensor &w, const Tensor &dy) {
  const int n = x.rows(), in = w.cols(), out = w.rows();
  if (dy.rows() != n || dy.cols() != out) {
    throw ShapeError("linear backward: dy " + dy.ShapeString());
  }
  LinearGrads g{Tensor(x.shape()), Tensor(w.shape()), Tensor({out})};
  const double *xp = x.values().data(), *wp = w.values().data();
  const double *dyp = dy.values().data();
  double *dxp = g.dx.values().data(), *dwp = g.dw.values().data();
  for (int r = 0; r < n; ++r) {
    const double *dyr = dyp + static_cast<int64_t>(r) * out;
    for (int i = 0; i < in; ++i) {
      double acc = 0.0;
      for (int o = 0; o < out; ++o) acc += dyr[o] * wp[static_cast<int64_t>(o) * in + i];
      dxp[static_cast<int64_t>(r) * in + i] = acc;
    }
  }
  for (int o = 0; o < out; ++o) {
    for (int i = 0; i < in; ++i) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r) {
        acc += dyp[static_cast<int64_t>(r) * out + o] * xp[static_cast<int64_t>(r) * in + i];
      }
      dwp[static_cast<int64_t>(o) * in + i] = acc;
    }
    double acc = 0.0;
    for (int r = 0; r < n; ++r) acc += dyp[static_cast<int64_t>(r) * out + o];
    g.db[o] = acc;
  }
  return g;
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> p(logits.size());
  if (logits.empty()) return p;
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    z += p[i];
  }
  for (double &x : p) x /= z;
  return p;
}

LossGrad SoftmaxCrossEntropy(std::span<const double> logits, int target) {
  const int n = static_cast<int>(logits.size());
  if (n < 2) throw std::invalid_argument("cross entropy needs at least two classes");
  if (target < 0 || target >= n) {
    throw std::invalid_argument("cross entropy target " + std::to_string(target) +
                                " out of range [0, " + std::to_string(n) + ")");
  }
  CheckFinite(logits, "cross entropy logits");
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - m);
  const double log_z = std::log(z) + m;
  LossGrad out;
  out.loss = log_z - logits[target];
  out.grad.resize(n);
  for (int i = 0; i < n; ++i) out.grad[i] = std::exp(logits[i] - log_z);
  out.grad[target] -= 1.0;
  return out;
}

MaskedBceResult MaskedBce(std::span<const double> logits,
                          std::span<const double> targets,
                          UndeterminedMode mode) {
  if (logits.size() != targets.size()) {
    throw std::invalid_argument("BCE: " + std::to_string(logits.size()) +
                                " logits vs " + std::to_string(targets.size()) +
                                " targets");
  }
  CheckFinite(logits, "BCE logits");
  MaskedBceResult out;
  out.grad.assign(logits.size(), 0.0);
  for (size_t c = 0; c < logits.size(); ++c) {
    const double y = targets[c];
    if (y != 0.0 && y != 0.5 && y != 1.0) {
      throw std::invalid_argument("BCE target must be 0, 0.5 or 1");
    }
    if (y == 0.5 && mode == UndeterminedMode::kMask) continue;
    ++out.active;
  }
  if (out.active == 0) {
    out.all_masked = true;
    return out;
  }
  const double scale = 1.0 / out.active;
  for (size_t c = 0; c < logits.size(); ++c) {
    const double y = targets[c];
    if (y == 0.5 && mode == UndeterminedMode::kMask) continue;
    const double raw = Sigmoid(logits[c]);
    const double p = std::clamp(raw, kBceEpsilon, 1.0 - kBceEpsilon);
    out.loss += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    // The clamp has zero derivative where it is active.
    if (raw == p) out.grad[c] = (p - y) * scale;
  }
  out.loss *= scale;
  return out;
}

AttentionResult ScaledDotAttention(const Tensor &q, const Tensor &k,
                                   const Tensor &v) {
  if (q.cols() != k.cols() || k.rows() != v.rows() || k.rows() == 0) {
    throw ShapeError("attention: Q " + q.ShapeString() + ", K " +
                     k.ShapeString() + ", V " + v.ShapeString());
  }
  const int nq = q.rows(), nk = k.rows(), d = q.cols(), dv = v.cols();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  AttentionResult out{LikeRows(q, nq, dv), Tensor({nq, nk})};
  std::vector<double> scores(nk), e(nk);
  std::vector<int> order(nk);
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < nk; ++j) {
      double acc = 0.0;
      for (int c = 0; c < d; ++c) acc += q.at(i, c) * k.at(j, c);
      scores[j] = acc * inv_sqrt_d;
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (scores[a] != scores[b]) return scores[a] < scores[b];
      const int ck = CompareRows(k.row(a), k.row(b));
      if (ck != 0) return ck < 0;
      return CompareRows(v.row(a), v.row(b)) < 0;
    });
    const double m = scores[order.back()];
    double z = 0.0;
    for (int j : order) {
      e[j] = std::exp(scores[j] - m);
      z += e[j];
    }
    for (int j = 0; j < nk; ++j) out.weights.at(i, j) = e[j] / z;
    for (int c = 0; c < dv; ++c) {
      double acc = 0.0;
      for (int j : order) acc += out.weights.at(i, j) * v.at(j, c);
      out.output.at(i, c) = acc;
    }
  }
  return out;
}

AttentionGrads ScaledDotAttentionBackward(const Tensor &q, const Tensor &k,
                                          const Tensor &v,
                                          const Tensor &weights,
                                          const Tensor &dout) {
  const int nq = q.rows(), nk = k.rows(), d = q.cols(), dv = v.cols();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  AttentionGrads g{Tensor(q.shape()), Tensor(k.shape()), Tensor(v.shape())};
  std::vector<double> dw(nk), ds(nk);
  for (int i = 0; i < nq; ++i) {
    double dot = 0.0;
    for (int j = 0; j < nk; ++j) {
      const double w = weights.at(i, j);
      double acc = 0.0;
      for (int c = 0; c < dv; ++c) {
        acc += dout.at(i, c) * v.at(j, c);
        g.dv.at(j, c) += w * dout.at(i, c);
      }
      dw[j] = acc;
      dot += w * acc;
    }
    for (int j = 0; j < nk; ++j) {
      ds[j] = weights.at(i, j) * (dw[j] - dot) * inv_sqrt_d;
      for (int c = 0; c < d; ++c) {
        g.dq.at(i, c) += ds[j] * k.at(j, c);
        g.dk.at(j, c) += ds[j] * q.at(i, c);
      }
    }
  }
  return g;
}

LayerNormResult LayerNormForward(const Tensor &x, const Tensor &gain,
                                 const Tensor &bias) {
  const int n = x.rows(), m = x.cols();
  if (m < 2 || gain.size() != m || bias.size() != m) {
    throw ShapeError("layer norm: x " + x.ShapeString() + ", gain " +
                     gain.ShapeString() + ", bias " + bias.ShapeString());
  }
  LayerNormResult out{Tensor(x.shape()), std::vector<double>(n),
                      std::vector<double>(n)};
  for (int r = 0; r < n; ++r) {
    double mean = 0.0;
    for (int c = 0; c < m; ++c) mean += x.at(r, c);
    mean /= m;
    double var = 0.0;
    for (int c = 0; c < m; ++c) {
      const double t = x.at(r, c) - mean;
      var += t * t;
    }
    var /= m;
    const double rstd = 1.0 / std::sqrt(var + kLayerNormEpsilon);
    out.mean[r] = mean;
    out.rstd[r] = rstd;
    for (int c = 0; c < m; ++c) {
      out.output.at(r, c) = (x.at(r, c) - mean) * rstd * gain[c] + bias[c];
    }
  }
  return out;
}

LayerNormGrads LayerNormBackward(const Tensor &x, const Tensor &gain,
                                 const LayerNormResult &forward,
                                 const Tensor &dy) {
  const int n = x.rows(), m = x.cols();
  LayerNormGrads g{Tensor(x.shape()), Tensor({m}), Tensor({m})};
  std::vector<double> xhat(m), dxhat(m);
  for (int r = 0; r < n; ++r) {
    const double rstd = forward.rstd[r];
    double sum_d = 0.0, sum_dx = 0.0;
    for (int c = 0; c < m; ++c) {
      xhat[c] = (x.at(r, c) - forward.mean[r]) * rstd;
      dxhat[c] = dy.at(r, c) * gain[c];
      g.dgain[c] += dy.at(r, c) * xhat[c];
      g.dbias[c] += dy.at(r, c);
      sum_d += dxhat[c];
      sum_dx += dxhat[c] * xhat[c];
    }
    for (int c = 0; c < m; ++c) {
      g.dx.at(r, c) = rstd / m * (m * dxhat[c] - sum_d - xhat[c] * sum_dx);
    }
  }
  return g;
}

}  // namespace langaux
