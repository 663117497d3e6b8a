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

#include "langaux/grad_check.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace langaux {
namespace {

constexpr double kNegligible = 1e-10;

double Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double RelativeError(std::span<const double> a, std::span<const double> b) {
  std::vector<double> diff(a.size());
  for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  const double na = Norm(a), nb = Norm(b);
  if (na < kNegligible && nb < kNegligible) return 0.0;
  return Norm(diff) / (na + nb);
}

GradCheckResult GradCheck(const ScalarFn &f, const GradFn &grad,
                          std::vector<Tensor> inputs,
                          const GradCheckOptions &opts) {
  GradCheckResult result;
  const std::vector<std::vector<double>> analytic = grad(inputs);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  const double h = opts.step;
  for (size_t k = 0; k < inputs.size(); ++k) {
    Tensor &x = inputs[k];
    const std::vector<double> &a = analytic[k];
    double err = 0.0;
    if (x.size() <= opts.max_full_size) {
      std::vector<double> numeric(x.size());
      for (int64_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + h;
        const double up = f(inputs);
        x[i] = saved - h;
        const double down = f(inputs);
        x[i] = saved;
        numeric[i] = (up - down) / (2 * h);
      }
      err = RelativeError(a, numeric);
    } else {
      const std::vector<double> saved = x.values();
      std::vector<double> u(x.size());
      for (int d = 0; d < opts.directions; ++d) {
        for (double &v : u) v = normal(rng);
        const double n = Norm(u);
        for (double &v : u) v /= n;
        double ad = 0.0;
        for (int64_t i = 0; i < x.size(); ++i) ad += a[i] * u[i];
        for (int64_t i = 0; i < x.size(); ++i) x[i] = saved[i] + h * u[i];
        const double up = f(inputs);
        for (int64_t i = 0; i < x.size(); ++i) x[i] = saved[i] - h * u[i];
        const double down = f(inputs);
        x.values() = saved;
        const double nd = (up - down) / (2 * h);
        const double e[1] = {ad}, g[1] = {nd};
        err = std::max(err, RelativeError(e, g));
      }
    }
    result.per_input.push_back(err);
    result.max_rel_error = std::max(result.max_rel_error, err);
  }
  return result;
}

GradCheckResult TapeGradCheck(const TapeFn &build, std::vector<Tensor> inputs,
                              const GradCheckOptions &opts) {
  auto f = [&](const std::vector<Tensor> &xs) {
    Tape tape;
    std::vector<Var> vars;
    for (const Tensor &x : xs) vars.push_back(tape.Constant(x));
    return tape.value(build(tape, vars))[0];
  };
  auto grad = [&](const std::vector<Tensor> &xs) {
    std::vector<Tensor> copies = xs;
    Tape tape;
    std::vector<Var> vars;
    for (Tensor &x : copies) {
      x.EnsureGrad();
      x.ZeroGrad();
      vars.push_back(tape.Param(&x));
    }
    tape.Backward(build(tape, vars));
    std::vector<std::vector<double>> out;
    for (Tensor &x : copies) out.push_back(x.grad());
    return out;
  };
  return GradCheck(f, grad, std::move(inputs), opts);
}

}  // namespace langaux
