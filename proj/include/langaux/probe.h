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

#ifndef LANGAUX_PROBE_H_
#define LANGAUX_PROBE_H_

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace langaux {

class ProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kProbeRidge = 1e-3;

// One-vs-rest linear classifier fit in closed form by ridge regression onto
// one-hot targets. A bias column is appended to the features.
class RidgeProbe {
 public:
  // Rows of x are samples. Throws ProbeError for an empty or rank-deficient
  // problem or fewer than two classes.
  static RidgeProbe Fit(const Eigen::MatrixXd &x, const std::vector<int> &labels,
                        int num_classes, double lambda = kProbeRidge);

  int Predict(const Eigen::Ref<const Eigen::RowVectorXd> &features) const;
  double Accuracy(const Eigen::MatrixXd &x, const std::vector<int> &labels) const;

  const Eigen::MatrixXd &weights() const { return weights_; }

 private:
  Eigen::MatrixXd weights_;  // (d + 1) x K
};

// Fits on the training split and returns held-out accuracy.
double ProbeAccuracy(const Eigen::MatrixXd &train_x,
                     const std::vector<int> &train_labels,
                     const Eigen::MatrixXd &test_x,
                     const std::vector<int> &test_labels, int num_classes,
                     double lambda = kProbeRidge);

}  // namespace langaux

#endif  // LANGAUX_PROBE_H_
