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

#include "langaux/gru.h"

#include <algorithm>
#include <cmath>

#include "langaux/kernels.h"

namespace langaux {
namespace {

// out[o] = W[o,:] . x + U[o,:] . h + b[o]
void Affine(const Tensor &w, std::span<const double> x, const Tensor &u,
            std::span<const double> h, const Tensor &b, std::vector<double> *out) {
  const int n = w.rows(), nx = w.cols(), nh = u.cols();
  const double *wp = w.values().data(), *up = u.values().data();
  out->resize(n);
  for (int o = 0; o < n; ++o) {
    const double *wo = wp + static_cast<int64_t>(o) * nx;
    const double *uo = up + static_cast<int64_t>(o) * nh;
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) acc += wo[i] * x[i];
    for (int i = 0; i < nh; ++i) acc += uo[i] * h[i];
    (*out)[o] = acc + b[o];
  }
}

// Accumulates the gradients of one affine gate given da.
void AffineBackward(const Tensor &w, std::span<const double> x, const Tensor &u,
                    std::span<const double> h, const std::vector<double> &da,
                    Tensor *dw, Tensor *du, Tensor *db, double *dx,
                    std::vector<double> *dh) {
  const int n = w.rows(), nx = w.cols(), nh = u.cols();
  const double *wp = w.values().data(), *up = u.values().data();
  double *dwp = dw->values().data(), *dup = du->values().data();
  double *dhp = dh->data();
  for (int o = 0; o < n; ++o) {
    const double g = da[o];
    const double *wo = wp + static_cast<int64_t>(o) * nx;
    const double *uo = up + static_cast<int64_t>(o) * nh;
    double *dwo = dwp + static_cast<int64_t>(o) * nx;
    double *duo = dup + static_cast<int64_t>(o) * nh;
    for (int i = 0; i < nx; ++i) {
      dwo[i] += g * x[i];
      dx[i] += wo[i] * g;
    }
    for (int i = 0; i < nh; ++i) {
      duo[i] += g * h[i];
      dhp[i] += uo[i] * g;
    }
    (*db)[o] += g;
  }
}

}  // namespace

GruParams GruParams::Create(int input_size, int hidden_size) {
  GruParams p;
  for (Tensor *t : {&p.w_z, &p.w_r, &p.w_h}) *t = Tensor({hidden_size, input_size});
  for (Tensor *t : {&p.u_z, &p.u_r, &p.u_h}) *t = Tensor({hidden_size, hidden_size});
  for (Tensor *t : {&p.b_z, &p.b_r, &p.b_h}) *t = Tensor({hidden_size});
  return p;
}

std::array<Tensor *, GruParams::kNumTensors> GruParams::Tensors() {
  return {&w_z, &u_z, &b_z, &w_r, &u_r, &b_r, &w_h, &u_h, &b_h};
}

std::array<const Tensor *, GruParams::kNumTensors> GruParams::Tensors() const {
  return {&w_z, &u_z, &b_z, &w_r, &u_r, &b_r, &w_h, &u_h, &b_h};
}

const std::array<std::string, GruParams::kNumTensors> &GruParams::Names() {
  static const std::array<std::string, kNumTensors> names = {
      "w_z", "u_z", "b_z", "w_r", "u_r", "b_r", "w_h", "u_h", "b_h"};
  return names;
}

std::vector<double> GruTrace::Final() const {
  const int t = states.shape()[0];
  if (t == 0) return std::vector<double>(states.shape()[1], 0.0);
  const auto row = states.row(t - 1);
  return {row.begin(), row.end()};
}

GruTrace GruForward(const Tensor &x, const GruParams &p) {
  const int hidden = p.hidden_size();
  const int steps = x.rank() == 0 ? 0 : x.rows();
  if (steps > 0 && x.cols() != p.input_size()) {
    throw ShapeError("GRU input " + x.ShapeString() + " vs input size " +
                     std::to_string(p.input_size()));
  }
  GruTrace tr{Tensor({steps, hidden}), Tensor({steps, hidden}),
              Tensor({steps, hidden}), Tensor({steps, hidden})};
  std::vector<double> h(hidden, 0.0), az, ar, ah, rh(hidden);
  for (int t = 0; t < steps; ++t) {
    const auto xt = x.row(t);
    Affine(p.w_z, xt, p.u_z, h, p.b_z, &az);
    Affine(p.w_r, xt, p.u_r, h, p.b_r, &ar);
    for (int i = 0; i < hidden; ++i) {
      tr.update.at(t, i) = Sigmoid(az[i]);
      tr.reset.at(t, i) = Sigmoid(ar[i]);
      rh[i] = tr.reset.at(t, i) * h[i];
    }
    Affine(p.w_h, xt, p.u_h, rh, p.b_h, &ah);
    for (int i = 0; i < hidden; ++i) {
      const double c = std::tanh(ah[i]);
      const double z = tr.update.at(t, i);
      tr.candidate.at(t, i) = c;
      h[i] = (1.0 - z) * h[i] + z * c;
      tr.states.at(t, i) = h[i];
    }
  }
  return tr;
}

GruGrads GruBackward(const Tensor &x, const GruParams &p, const GruTrace &tr,
                     const Tensor &dstates) {
  const int hidden = p.hidden_size();
  const int steps = tr.states.shape()[0];
  GruGrads g{Tensor(x.shape()), GruParams::Create(p.input_size(), hidden)};
  std::vector<double> carry(hidden, 0.0), dh(hidden), hprev(hidden),
      rh(hidden), da_h(hidden), da_r(hidden), da_z(hidden), drh(hidden),
      dhprev(hidden);
  for (int t = steps - 1; t >= 0; --t) {
    for (int i = 0; i < hidden; ++i) {
      dh[i] = dstates.at(t, i) + carry[i];
      hprev[i] = t > 0 ? tr.states.at(t - 1, i) : 0.0;
      rh[i] = tr.reset.at(t, i) * hprev[i];
    }
    for (int i = 0; i < hidden; ++i) {
      const double z = tr.update.at(t, i), c = tr.candidate.at(t, i);
      const double dz = dh[i] * (c - hprev[i]);
      const double dc = dh[i] * z;
      dhprev[i] = dh[i] * (1.0 - z);
      da_h[i] = dc * (1.0 - c * c);
      da_z[i] = dz * z * (1.0 - z);
    }
    const auto xt = x.row(t);
    double *dx = g.dx.data().data() + static_cast<size_t>(t) * x.cols();
    std::fill(drh.begin(), drh.end(), 0.0);
    AffineBackward(p.w_h, xt, p.u_h, rh, da_h, &g.dparams.w_h, &g.dparams.u_h,
                   &g.dparams.b_h, dx, &drh);
    for (int i = 0; i < hidden; ++i) {
      const double r = tr.reset.at(t, i);
      dhprev[i] += drh[i] * r;
      da_r[i] = drh[i] * hprev[i] * r * (1.0 - r);
    }
    AffineBackward(p.w_r, xt, p.u_r, hprev, da_r, &g.dparams.w_r, &g.dparams.u_r,
                   &g.dparams.b_r, dx, &dhprev);
    AffineBackward(p.w_z, xt, p.u_z, hprev, da_z, &g.dparams.w_z, &g.dparams.u_z,
                   &g.dparams.b_z, dx, &dhprev);
    carry = dhprev;
  }
  return g;
}

}  // namespace langaux
