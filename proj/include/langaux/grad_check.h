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

#ifndef LANGAUX_GRAD_CHECK_H_
#define LANGAUX_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "langaux/tape.h"
#include "langaux/tensor.h"

namespace langaux {

struct GradCheckOptions {
  double step = 1e-5;
  // Inputs with at most this many entries are checked coordinate by
  // coordinate; larger ones along random directions.
  int64_t max_full_size = 2048;
  int directions = 12;
  uint64_t seed = 17;
};

struct GradCheckResult {
  // Per input: |a - n| / (|a| + |n|) where a is the analytic and n the
  // central-difference estimate (vectors for coordinate checks, directional
  // derivatives otherwise); 0 when both are negligible.
  std::vector<double> per_input;
  double max_rel_error = 0.0;
};

using ScalarFn = std::function<double(const std::vector<Tensor> &)>;
// Analytic gradients, one buffer per input.
using GradFn =
    std::function<std::vector<std::vector<double>>(const std::vector<Tensor> &)>;

GradCheckResult GradCheck(const ScalarFn &f, const GradFn &grad,
                          std::vector<Tensor> inputs,
                          const GradCheckOptions &opts = {});

// Builds a scalar on a tape from parameter leaves of the inputs.
using TapeFn = std::function<Var(Tape &, std::span<const Var>)>;

// GradCheck where the function and its gradient both come from a tape.
GradCheckResult TapeGradCheck(const TapeFn &build, std::vector<Tensor> inputs,
                              const GradCheckOptions &opts = {});

// Relative error between two vectors as reported by GradCheck.
double RelativeError(std::span<const double> a, std::span<const double> b);

}  // namespace langaux

#endif  // LANGAUX_GRAD_CHECK_H_
