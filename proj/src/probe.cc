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

#include "langaux/probe.h"

#include <string>

namespace langaux {
namespace {

Eigen::MatrixXd WithBias(const Eigen::MatrixXd &x) {
  Eigen::MatrixXd out(x.rows(), x.cols() + 1);
  out.leftCols(x.cols()) = x;
  out.col(x.cols()).setOnes();
  return out;
}

}  // namespace

RidgeProbe RidgeProbe::Fit(const Eigen::MatrixXd &x,
                           const std::vector<int> &labels, int num_classes,
                           double lambda) {
  if (x.rows() == 0 || x.cols() == 0) throw ProbeError("probe has no samples");
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) {
    throw ProbeError("probe label count does not match sample count");
  }
  if (num_classes < 2) throw ProbeError("probe needs at least two classes");
  if (!x.allFinite()) throw ProbeError("probe features are not finite");
  const Eigen::MatrixXd a = WithBias(x);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(x.rows(), num_classes);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw ProbeError("probe label " + std::to_string(labels[i]) +
                       " out of range");
    }
    y(i, labels[i]) = 1.0;
  }
  Eigen::MatrixXd gram = a.transpose() * a;
  gram.diagonal().array() += lambda;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw ProbeError("degenerate probe design matrix");
  }
  RidgeProbe probe;
  probe.weights_ = ldlt.solve(a.transpose() * y);
  if (!probe.weights_.allFinite()) {
    throw ProbeError("degenerate probe design matrix");
  }
  return probe;
}

int RidgeProbe::Predict(
    const Eigen::Ref<const Eigen::RowVectorXd> &features) const {
  const Eigen::Index d = features.size();
  Eigen::RowVectorXd scores =
      features * weights_.topRows(d) + weights_.row(d);
  Eigen::Index best;
  scores.maxCoeff(&best);
  return static_cast<int>(best);
}

double RidgeProbe::Accuracy(const Eigen::MatrixXd &x,
                            const std::vector<int> &labels) const {
  if (x.rows() == 0) throw ProbeError("probe evaluation set is empty");
  int correct = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (Predict(x.row(i)) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

double ProbeAccuracy(const Eigen::MatrixXd &train_x,
                     const std::vector<int> &train_labels,
                     const Eigen::MatrixXd &test_x,
                     const std::vector<int> &test_labels, int num_classes,
                     double lambda) {
  return RidgeProbe::Fit(train_x, train_labels, num_classes, lambda)
      .Accuracy(test_x, test_labels);
}

}  // namespace langaux
